#include "qpr/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qpr/geom.hpp"

namespace qpr {

namespace {

// Orients the stored route of e to start at v.
void orient_from(Drawing& d, const EdgeId& e, const NodeId& v) {
  const auto& rt = d.routes.at(e);
  require(!rt.empty(), ErrCode::Internal, "undrawn edge " + e);
  if (d.seg(rt.front()).from != v) d.reverse_route(e);
  require(d.seg(d.routes.at(e).front()).from == v, ErrCode::Internal, "cannot orient " + e);
}

}  // namespace

Drawing remove_double_crossing(Drawing d, const EdgeId& e1, const EdgeId& e2) {
  auto shared = d.shared_crossings(e1, e2);
  require(shared.size() == 2, ErrCode::NotDoubleCrossing,
          e1 + " and " + e2 + " do not cross exactly twice");
  // 2-plane: both edges are saturated by the two mutual crossings.
  require(d.crossing_count(e1) == 2 && d.crossing_count(e2) == 2, ErrCode::NotDoubleCrossing,
          "edges carry extra crossings");
  const EdgeRec r1 = d.edges.at(e1), r2 = d.edges.at(e2);
  orient_from(d, e1, r1.a);
  orient_from(d, e2, r2.a);
  auto rt1 = d.routes.at(e1), rt2 = d.routes.at(e2);
  require(rt1.size() == 3 && rt2.size() == 3, ErrCode::Internal, "unexpected route shapes");
  // Courses after the exchange: e1 runs prefix1 + mid2 + suffix1, e2 the other mix.
  NodeId x1 = d.seg(rt1[0]).to;  // first crossing along e1
  bool e2_same_order = d.seg(rt2[0]).to == x1;
  struct Piece {
    int seg;
    bool along;  // true when the stored direction follows the new course
  };
  auto course = [&](const std::vector<int>& own, const std::vector<int>& other) {
    std::vector<Piece> c;
    c.push_back({own[0], true});
    c.push_back({other[1], e2_same_order});
    c.push_back({own[2], true});
    return c;
  };
  std::vector<Piece> c1 = course(rt1, rt2);
  std::vector<Piece> c2 = course(rt2, rt1);

  int n1 = d.fresh_seg_id();
  int n2 = d.fresh_seg_id();
  Dart old_outer = d.outer;
  auto map_outer = [&](const std::vector<Piece>& c, int nseg, const NodeId& from) -> bool {
    for (const Piece& p : c) {
      if (old_outer.seg == p.seg) {
        bool along_course = old_outer.fwd == p.along;
        d.outer = Dart{nseg, along_course};
        (void)from;
        return true;
      }
    }
    return false;
  };
  bool outer_mapped = map_outer(c1, n1, r1.a) || map_outer(c2, n2, r2.a);
  (void)outer_mapped;

  // Endpoint rotations keep their slots with the new segment ids.
  auto swap_slot = [&](const NodeId& n, int olds, int news) {
    for (auto& s : d.rotations.at(n))
      if (s == olds) s = news;
  };
  swap_slot(r1.a, rt1[0], n1);
  swap_slot(r1.b, rt1[2], n1);
  swap_slot(r2.a, rt2[0], n2);
  swap_slot(r2.b, rt2[2], n2);
  for (const NodeId& x : shared) {
    d.rotations.erase(x);
    d.crossings.erase(x);
  }
  for (int s : rt1) d.segs.erase(s);
  for (int s : rt2) d.segs.erase(s);
  d.segs[n1] = Seg{e1, r1.a, r1.b};
  d.segs[n2] = Seg{e2, r2.a, r2.b};
  d.routes.at(e1) = {n1};
  d.routes.at(e2) = {n2};
  require(d.euler_ok(), ErrCode::Internal, "double-crossing removal broke the embedding");
  return d;
}

Drawing remove_adjacent_crossing(Drawing d, const EdgeId& e1, const EdgeId& e2) {
  require(d.edges.count(e1) && d.edges.count(e2), ErrCode::Ref, "unknown edge");
  const EdgeRec r1 = d.edges.at(e1), r2 = d.edges.at(e2);
  NodeId v;
  if (r1.a == r2.a || r1.a == r2.b)
    v = r1.a;
  else if (r1.b == r2.a || r1.b == r2.b)
    v = r1.b;
  else
    fail(ErrCode::NotAdjacentCrossing, e1 + " and " + e2 + " share no endpoint");
  auto shared = d.shared_crossings(e1, e2);
  require(shared.size() == 1, ErrCode::NotAdjacentCrossing,
          e1 + " and " + e2 + " do not cross exactly once");
  NodeId x = shared.front();

  orient_from(d, e1, v);
  orient_from(d, e2, v);
  auto split_at = [&](const EdgeId& e) {
    const auto& rt = d.routes.at(e);
    std::vector<int> pre, post;
    bool seen = false;
    for (int s : rt) {
      if (!seen)
        pre.push_back(s);
      else
        post.push_back(s);
      if (d.seg(s).to == x) seen = true;
    }
    require(seen && !post.empty(), ErrCode::Internal, "crossing not interior on " + e);
    return std::make_pair(pre, post);
  };
  auto [p1, s1] = split_at(e1);
  auto [p2, s2] = split_at(e2);
  // The v->x portions swap owners; their crossing records follow.
  auto transfer = [&](const std::vector<int>& pieces, const EdgeId& from, const EdgeId& to) {
    for (int s : pieces) d.segs.at(s).edge = to;
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
      NodeId mid = d.seg(pieces[i]).to;
      CrossingRec& cr = d.crossings.at(mid);
      EdgeId other = cr.e1 == from ? cr.e2 : cr.e1;
      cr = CrossingRec{std::min(to, other), std::max(to, other), cr.anchor};
    }
  };
  transfer(p1, e1, e2);
  transfer(p2, e2, e1);
  // Splice both new courses through x.
  auto splice = [&](std::vector<int> pre, std::vector<int> post) {
    int last = pre.back(), drop = post.front();
    NodeId far = d.seg(drop).to;
    d.segs.at(last).to = far;
    for (auto& s : d.rotations.at(far))
      if (s == drop) s = last;
    if (d.outer.seg == drop) d.outer = Dart{last, d.outer.fwd};
    d.segs.erase(drop);
    post.erase(post.begin());
    pre.insert(pre.end(), post.begin(), post.end());
    return pre;
  };
  d.routes.at(e1) = splice(p2, s1);
  d.routes.at(e2) = splice(p1, s2);
  d.rotations.erase(x);
  d.crossings.erase(x);
  require(d.euler_ok(), ErrCode::Internal, "adjacent-crossing removal broke the embedding");
  return d;
}

std::pair<Drawing, NormalizeStats> minimize_crossings(Drawing d) {
  NormalizeStats st;
  for (;;) {
    auto pcs = d.crossing_pairs();
    const PairCount* dbl = nullptr;
    const PairCount* adj = nullptr;
    for (const auto& pc : pcs) {
      if (pc.count >= 2 && !dbl) dbl = &pc;
      if (pc.count == 1 && d.adjacent_edges(pc.e1, pc.e2) && !adj) adj = &pc;
    }
    if (dbl) {
      d = remove_double_crossing(std::move(d), dbl->e1, dbl->e2);
      st.double_removed++;
      continue;
    }
    if (adj) {
      d = remove_adjacent_crossing(std::move(d), adj->e1, adj->e2);
      st.adjacent_removed++;
      continue;
    }
    break;
  }
  return {std::move(d), st};
}

namespace {

// Attachment corner of an edge end, surviving the arc's deletion.
Corner anchor_before_delete(const Drawing& d, const EdgeId& e, const NodeId& endpoint) {
  const auto& rt = d.routes.at(e);
  int end_seg = d.seg(rt.front()).from == endpoint ? rt.front() : rt.back();
  require(d.seg(end_seg).from == endpoint || d.seg(end_seg).to == endpoint, ErrCode::Internal,
          "endpoint not on route of " + e);
  if (d.degree(endpoint) == 1) return Corner{endpoint, -1};
  return Corner{endpoint, d.rotation_prev(endpoint, end_seg)};
}

}  // namespace

Drawing regraft_triple(Drawing d, const Triple& t, const std::optional<GOrder>& g) {
  // Every triple edge must be saturated by its two mutual crossings.
  for (const auto& e : t.e)
    require(d.crossing_count(e) == 2, ErrCode::Internal, "triple edge carries foreign crossings: " + e);
  std::map<NodeId, Corner> attach;
  std::map<NodeId, EdgeId> chord_of;
  for (const auto& e : t.e) {
    const EdgeRec& rec = d.edges.at(e);
    for (const NodeId& u : {rec.a, rec.b}) {
      attach[u] = anchor_before_delete(d, e, u);
      chord_of[u] = e;
    }
  }
  require(attach.size() == 6, ErrCode::Struct, "3-crossing with adjacent edges");
  // The anchor darts of later-deleted edges may themselves belong to the triple;
  // delete in an order that leaves anchors valid by recomputing after deletions.
  for (const auto& e : t.e) d.delete_edge_arc(e);
  for (auto& [u, c] : attach) {
    if (c.after_seg != -1 && !d.segs.count(c.after_seg)) c = Corner{u, -1};
    if (c.after_seg == -1 && d.degree(u) > 0)
      fail(ErrCode::Internal, "lost attachment corner at " + u);
  }
  // All attachment corners must lie on a single face of the remainder.
  FaceSet fs = d.trace_faces();
  int face = -1;
  std::vector<std::pair<int, NodeId>> placed;  // walk position -> corner
  std::vector<NodeId> floating;
  for (const auto& [u, c] : attach) {
    if (d.degree(u) == 0) {
      floating.push_back(u);
      continue;
    }
    int f = d.face_at_corner(fs, c);
    require(face == -1 || face == f, ErrCode::Struct,
            "triple endpoints no longer share a face after removal");
    face = f;
  }
  std::vector<NodeId> rim;
  if (face != -1) {
    const auto& walk = fs.face(face);
    for (size_t i = 0; i < walk.size(); ++i) {
      NodeId n = d.tail(walk[i]);
      auto it = attach.find(n);
      if (it == attach.end() || it->second.after_seg == -1) continue;
      // This walk position realizes the corner when it exits via the dart
      // just after the anchor.
      if (d.rotation_next(n, it->second.after_seg) == walk[i].seg && d.tail(walk[i]) == n &&
          walk[i] == d.dart_at(n, walk[i].seg))
        placed.emplace_back(static_cast<int>(i), n);
    }
    std::sort(placed.begin(), placed.end());
    for (const auto& [pos, n] : placed) {
      (void)pos;
      rim.push_back(n);
    }
  }
  require(rim.size() + floating.size() == 6, ErrCode::Internal, "lost rim corners");
  // Insert floating endpoints so that every chord joins antipodal rim slots.
  std::sort(floating.begin(), floating.end());
  std::vector<NodeId> order;
  std::function<bool(size_t, std::vector<NodeId>&, std::vector<bool>&)> place =
      [&](size_t fixed_used, std::vector<NodeId>& cur, std::vector<bool>& used) {
        if (cur.size() == 6) {
          for (const auto& e : t.e) {
            const EdgeRec& rec = d.edges.at(e);
            int ia = -1, ib = -1;
            for (int i = 0; i < 6; ++i) {
              if (cur[static_cast<size_t>(i)] == rec.a) ia = i;
              if (cur[static_cast<size_t>(i)] == rec.b) ib = i;
            }
            if ((ia - ib + 6) % 6 != 3) return false;
          }
          order = cur;
          return true;
        }
        // Next slot: either the next fixed rim corner or any unused floating one.
        if (fixed_used < rim.size()) {
          cur.push_back(rim[fixed_used]);
          if (place(fixed_used + 1, cur, used)) return true;
          cur.pop_back();
        }
        for (size_t i = 0; i < floating.size(); ++i) {
          if (used[i]) continue;
          used[i] = true;
          cur.push_back(floating[i]);
          if (place(fixed_used, cur, used)) return true;
          cur.pop_back();
          used[i] = false;
        }
        return false;
      };
  {
    std::vector<NodeId> cur;
    std::vector<bool> used(floating.size(), false);
    require(place(0, cur, used), ErrCode::Struct,
            "triple endpoints admit no untangled chord arrangement");
  }
  // Pattern: straight chords; for a g-order request, chord b detours so that
  // from u it crosses a before c.
  std::map<NodeId, Vec> pos;
  std::map<NodeId, int> slot;
  for (int i = 0; i < 6; ++i) {
    pos[order[static_cast<size_t>(i)]] = rim_position(i);
    slot[order[static_cast<size_t>(i)]] = i;
  }
  std::vector<ChordSpec> chords;
  for (const auto& e : t.e) {
    const EdgeRec& rec = d.edges.at(e);
    chords.push_back(ChordSpec{e, rec.a, rec.b, {}});
  }
  if (g) {
    EdgeId c_edge;
    for (const auto& e : t.e)
      if (e != g->a && e != g->b) c_edge = e;
    const EdgeRec& ra = d.edges.at(g->a);
    const EdgeRec& rc = d.edges.at(c_edge);
    // f = the a-endpoint that neighbors u on the rim; w = the c-endpoint that
    // neighbors f.
    auto neighbors = [&](const NodeId& p, const NodeId& q) {
      int dd = (slot.at(p) - slot.at(q) + 6) % 6;
      return dd == 1 || dd == 5;
    };
    NodeId f = neighbors(ra.a, g->u) ? ra.a : ra.b;
    require(neighbors(f, g->u), ErrCode::RoleError, "g endpoint not adjacent to f along the rim");
    NodeId w = neighbors(rc.a, f) ? rc.a : rc.b;
    require(neighbors(w, f), ErrCode::RoleError, "no c endpoint neighbors f along the rim");
    Vec xac;
    require(proper_intersect(pos.at(ra.a), pos.at(ra.b), pos.at(rc.a), pos.at(rc.b), &xac,
                             nullptr, nullptr),
            ErrCode::Internal, "model chords a and c fail to cross");
    auto unit = [](Vec vv) {
      double l = std::sqrt(dot(vv, vv));
      return Vec{vv.x / l, vv.y / l};
    };
    Vec da = unit(pos.at(f) - xac);
    Vec dc = unit(pos.at(w) - xac);
    NodeId vertex_v = d.other_end(g->b, g->u);
    bool okq = false;
    for (double eps : {0.25, 0.12, 0.06, 0.03, 0.015}) {
      Vec q = xac + eps * (da + dc);
      auto hits = [&](Vec s0, Vec s1, const NodeId& ea, const NodeId& eb) {
        return proper_intersect(s0, s1, pos.at(ea), pos.at(eb), nullptr, nullptr, nullptr);
      };
      bool leg1_a = hits(pos.at(g->u), q, ra.a, ra.b);
      bool leg1_c = hits(pos.at(g->u), q, rc.a, rc.b);
      bool leg2_a = hits(q, pos.at(vertex_v), ra.a, ra.b);
      bool leg2_c = hits(q, pos.at(vertex_v), rc.a, rc.b);
      if (leg1_a && !leg1_c && !leg2_a && leg2_c) {
        for (auto& ch : chords)
          if (ch.id == g->b) ch.mid = {q};
        okq = true;
        break;
      }
    }
    require(okq, ErrCode::Internal, "could not realize the requested crossing order");
  }
  std::map<NodeId, Corner> attach_by_corner;
  for (const auto& [u, c] : attach) attach_by_corner[u] = c;
  graft_chords(d, order, attach_by_corner, chords);
  require(d.euler_ok(), ErrCode::Internal, "triple regraft broke the embedding");
  return d;
}

Drawing untangle(Drawing d, const Triple& t) {
  require(classify_tangled(d, t) == Tangledness::Tangled, ErrCode::NotTangled,
          "triple already untangled");
  d = regraft_triple(std::move(d), t, std::nullopt);
  require(classify_tangled(d, t) == Tangledness::Untangled, ErrCode::Internal,
          "untangle failed to produce an untangled triple");
  return d;
}

EnsureResult ensure_hexagon_boundaries(Drawing d, const std::vector<Triple>& triples) {
  EnsureResult res;
  int fresh = 0;
  for (const Triple& t : triples) {
    // A previous boundary reroute may have destroyed this triple; skip then
    // (the caller re-derives the triple set afterwards).
    bool alive = true;
    for (const auto& e : t.e)
      if (d.crossing_count(e) != 2) alive = false;
    for (size_t i = 0; alive && i < 3; ++i)
      for (size_t j = i + 1; j < 3; ++j)
        if (d.shared_crossings(t.e[i], t.e[j]).size() != 1) alive = false;
    if (!alive) continue;

    std::vector<Dart> walk = fh_walk(d, t);
    std::set<NodeId> eps;
    for (const auto& e : t.e) {
      eps.insert(d.edges.at(e).a);
      eps.insert(d.edges.at(e).b);
    }
    std::vector<NodeId> corner_order;
    std::map<NodeId, size_t> walk_pos;  // corner -> index of its outgoing walk dart
    for (size_t i = 0; i < walk.size(); ++i) {
      NodeId n = d.tail(walk[i]);
      if (eps.count(n)) {
        corner_order.push_back(n);
        walk_pos[n] = i;
      }
    }
    require(corner_order.size() == 6, ErrCode::Internal, "boundary walk misses endpoints");
    std::map<std::pair<NodeId, NodeId>, EdgeId> by_ends;
    for (const auto& [e, rec] : d.edges) by_ends[{rec.a, rec.b}] = e;
    for (size_t i = 0; i < 6; ++i) {
      NodeId u = corner_order[i], w = corner_order[(i + 1) % 6];
      auto key = std::make_pair(std::min(u, w), std::max(u, w));
      auto it = by_ends.find(key);
      EdgeId e;
      bool adding = false;
      if (it == by_ends.end()) {
        do {
          e = "b" + std::to_string(fresh++);
        } while (d.edges.count(e));
        d.add_abstract_edge(e, u, w);
        adding = true;
        res.added_edges.push_back(e);
      } else {
        e = it->second;
        if (d.crossing_count(e) == 0) continue;
        if (t.contains(e)) continue;  // never reroute a chord of this triple
        d.delete_edge_arc(e);
        res.rerouted_edges.push_back(e);
      }
      (void)adding;
      // Hug the boundary walk from u to w on its face side.
      // Recompute the walk darts in the current drawing state (deleting an arc
      // above may have merged foreign segments, not walk segments).
      Dart out_u = walk[walk_pos.at(u)];
      Dart in_w = walk[(walk_pos.at(w) + walk.size() - 1) % walk.size()];
      require(d.head(in_w) == w, ErrCode::Internal, "walk misaligned at " + w);
      Corner cu{u, d.rotation_prev(u, out_u.seg)};
      Corner cw{w, in_w.seg};
      FaceSet fs = d.trace_faces();
      require(d.face_at_corner(fs, cu) == d.face_at_corner(fs, cw), ErrCode::BoundaryBlocked,
              "boundary corners not on a common face: " + u + "," + w);
      d.insert_routed_arc(e, cu, {}, cw);
    }
  }
  require(d.euler_ok(), ErrCode::Internal, "boundary augmentation broke the embedding");
  res.drawing = std::move(d);
  return res;
}

}  // namespace qpr
