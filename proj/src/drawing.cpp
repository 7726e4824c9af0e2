#include "qpr/drawing.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace qpr {

const char* err_name(ErrCode c) {
  switch (c) {
    case ErrCode::Syntax: return "SyntaxError";
    case ErrCode::Ref: return "RefError";
    case ErrCode::Struct: return "StructError";
    case ErrCode::NotSimpleCycle: return "NotSimpleCycle";
    case ErrCode::Spec: return "SpecError";
    case ErrCode::SelfCross: return "SelfCross";
    case ErrCode::NotDoubleCrossing: return "NotDoubleCrossing";
    case ErrCode::NotAdjacentCrossing: return "NotAdjacentCrossing";
    case ErrCode::NotTangled: return "NotTangled";
    case ErrCode::BoundaryBlocked: return "BoundaryBlocked";
    case ErrCode::DisjointnessViolated: return "DisjointnessViolated";
    case ErrCode::BoundaryMissing: return "BoundaryMissing";
    case ErrCode::NotInjective: return "NotInjective";
    case ErrCode::NotIncident: return "NotIncident";
    case ErrCode::NoPerfectMatching: return "NoPerfectMatching";
    case ErrCode::ProgressStalled: return "ProgressStalled";
    case ErrCode::NoMatching: return "NoMatching";
    case ErrCode::SelectionConflict: return "SelectionConflict";
    case ErrCode::RoleError: return "RoleError";
    case ErrCode::SweepBlocked: return "SweepBlocked";
    case ErrCode::LoopGuard: return "LoopGuard";
    case ErrCode::VerificationFailed: return "VerificationFailed";
    case ErrCode::InfeasibleParams: return "InfeasibleParams";
    case ErrCode::LayoutFailure: return "LayoutFailure";
    case ErrCode::Internal: return "InternalError";
  }
  return "UnknownError";
}

FaceSet::FaceSet(std::vector<std::vector<Dart>> faces, std::map<Dart, int> dart_face, int outer)
    : faces_(std::move(faces)), dart_face_(std::move(dart_face)), outer_(outer) {}

int FaceSet::face_of(const Dart& d) const {
  auto it = dart_face_.find(d);
  require(it != dart_face_.end(), ErrCode::Internal, "dart not in face map");
  return it->second;
}

const Seg& Drawing::seg(int id) const {
  auto it = segs.find(id);
  require(it != segs.end(), ErrCode::Internal, "unknown segment id " + std::to_string(id));
  return it->second;
}

Dart Drawing::dart_at(const NodeId& n, int s) const {
  const Seg& sg = seg(s);
  require(sg.from == n || sg.to == n, ErrCode::Internal, "segment not incident to node " + n);
  return Dart{s, sg.from == n};
}

int Drawing::degree(const NodeId& n) const {
  auto it = rotations.find(n);
  return it == rotations.end() ? 0 : static_cast<int>(it->second.size());
}

std::vector<NodeId> Drawing::route_nodes(const EdgeId& e) const {
  auto it = routes.find(e);
  require(it != routes.end(), ErrCode::Ref, "edge has no route: " + e);
  std::vector<NodeId> out;
  if (it->second.empty()) return out;
  out.push_back(seg(it->second.front()).from);
  for (int s : it->second) out.push_back(seg(s).to);
  return out;
}

std::vector<NodeId> Drawing::shared_crossings(const EdgeId& a, const EdgeId& b) const {
  std::vector<NodeId> out;
  for (const auto& [x, rec] : crossings) {
    EdgeId lo = std::min(a, b), hi = std::max(a, b);
    if (rec.e1 == lo && rec.e2 == hi) out.push_back(x);
  }
  return out;
}

int Drawing::crossing_count(const EdgeId& e) const {
  int c = 0;
  for (const auto& [x, rec] : crossings)
    if (rec.e1 == e || rec.e2 == e) ++c;
  return c;
}

bool Drawing::adjacent_edges(const EdgeId& a, const EdgeId& b) const {
  const EdgeRec& ra = edges.at(a);
  const EdgeRec& rb = edges.at(b);
  return ra.a == rb.a || ra.a == rb.b || ra.b == rb.a || ra.b == rb.b;
}

NodeId Drawing::other_end(const EdgeId& e, const NodeId& v) const {
  const EdgeRec& r = edges.at(e);
  require(r.a == v || r.b == v, ErrCode::Internal, "vertex not an endpoint of " + e);
  return r.a == v ? r.b : r.a;
}

bool Drawing::edge_incident(const EdgeId& e, const NodeId& v) const {
  const EdgeRec& r = edges.at(e);
  return r.a == v || r.b == v;
}

int Drawing::rotation_index(const NodeId& n, int s) const {
  const auto& rot = rotations.at(n);
  for (size_t i = 0; i < rot.size(); ++i)
    if (rot[i] == s) return static_cast<int>(i);
  fail(ErrCode::Internal, "segment not in rotation of " + n);
}

int Drawing::rotation_next(const NodeId& n, int s) const {
  const auto& rot = rotations.at(n);
  int i = rotation_index(n, s);
  return rot[(static_cast<size_t>(i) + 1) % rot.size()];
}

int Drawing::rotation_prev(const NodeId& n, int s) const {
  const auto& rot = rotations.at(n);
  int i = rotation_index(n, s);
  return rot[(static_cast<size_t>(i) + rot.size() - 1) % rot.size()];
}

void Drawing::validate_structure() const {
  for (const auto& [e, rec] : edges) {
    require(rec.a < rec.b, ErrCode::Struct, "edge endpoints not normalized: " + e);
    require(is_vertex(rec.a) && is_vertex(rec.b), ErrCode::Ref, "edge endpoint missing: " + e);
  }
  // Simple graph: no two edges on the same endpoint pair.
  {
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& [e, rec] : edges)
      require(seen.insert({rec.a, rec.b}).second, ErrCode::Struct, "parallel edges at " + rec.a + "-" + rec.b);
  }
  for (const auto& [x, rec] : crossings) {
    require(rec.e1 < rec.e2, ErrCode::Struct, "crossing pair not normalized at " + x);
    require(edges.count(rec.e1) && edges.count(rec.e2), ErrCode::Ref, "crossing references missing edge at " + x);
    require(!is_vertex(x), ErrCode::Struct, "node is both vertex and crossing: " + x);
  }
  std::map<int, int> seg_uses;
  for (const auto& [e, rt] : routes) {
    require(edges.count(e), ErrCode::Ref, "route for unknown edge " + e);
    if (rt.empty()) continue;
    const EdgeRec& rec = edges.at(e);
    for (size_t i = 0; i < rt.size(); ++i) {
      const Seg& s = seg(rt[i]);
      require(s.edge == e, ErrCode::Struct, "segment owner mismatch on " + e);
      if (i + 1 < rt.size()) {
        require(s.to == seg(rt[i + 1]).from, ErrCode::Struct, "route not chained on " + e);
        require(is_crossing(s.to), ErrCode::Struct, "interior route node not a crossing on " + e);
        const CrossingRec& cr = crossings.at(s.to);
        require(cr.e1 == e || cr.e2 == e, ErrCode::Struct, "route passes foreign crossing on " + e);
      }
      seg_uses[rt[i]]++;
    }
    NodeId u = seg(rt.front()).from, v = seg(rt.back()).to;
    require((u == rec.a && v == rec.b) || (u == rec.b && v == rec.a), ErrCode::Struct,
            "route endpoints mismatch on " + e);
  }
  for (const auto& [sid, s] : segs) {
    (void)s;
    require(seg_uses.count(sid) && seg_uses[sid] == 1, ErrCode::Struct,
            "segment not used exactly once: " + std::to_string(sid));
  }
  // Each crossing appears exactly once in each of its two routes.
  for (const auto& [x, rec] : crossings) {
    for (const EdgeId& e : {rec.e1, rec.e2}) {
      auto nodes = route_nodes(e);
      int cnt = 0;
      for (size_t i = 1; i + 1 < nodes.size(); ++i)
        if (nodes[i] == x) ++cnt;
      require(cnt == 1, ErrCode::Struct, "crossing " + x + " not interior exactly once on " + e);
    }
  }
  // Rotations are permutations of incident segments.
  std::map<NodeId, std::set<int>> incident;
  for (const auto& [sid, s] : segs) {
    require(s.from != s.to, ErrCode::Struct, "degenerate segment " + std::to_string(sid));
    incident[s.from].insert(sid);
    incident[s.to].insert(sid);
  }
  for (const auto& [n, inc] : incident) {
    require(has_node(n), ErrCode::Ref, "segment references unknown node " + n);
    auto it = rotations.find(n);
    require(it != rotations.end(), ErrCode::Struct, "missing rotation at " + n);
    std::set<int> rotset(it->second.begin(), it->second.end());
    require(rotset.size() == it->second.size(), ErrCode::Struct, "duplicate dart in rotation at " + n);
    require(rotset == inc, ErrCode::Struct, "rotation is not a permutation of incident darts at " + n);
  }
  for (const auto& [n, rot] : rotations) {
    require(has_node(n), ErrCode::Ref, "rotation at unknown node " + n);
    if (!incident.count(n)) require(rot.empty(), ErrCode::Struct, "rotation darts at isolated node " + n);
  }
  // Crossing nodes: degree 4 and alternating edges.
  for (const auto& [x, rec] : crossings) {
    const auto& rot = rotations.at(x);
    require(rot.size() == 4, ErrCode::Struct, "crossing " + x + " is not degree 4");
    std::vector<EdgeId> around;
    for (int s : rot) around.push_back(seg(s).edge);
    bool alt = around[0] == around[2] && around[1] == around[3] && around[0] != around[1];
    require(alt, ErrCode::Struct, "edges do not alternate at crossing " + x);
    require((around[0] == rec.e1 && around[1] == rec.e2) || (around[0] == rec.e2 && around[1] == rec.e1),
            ErrCode::Struct, "rotation edges disagree with crossing record at " + x);
  }
  if (!segs.empty()) {
    require(segs.count(outer.seg) != 0, ErrCode::Struct, "outer face dart invalid");
  }
}

FaceSet Drawing::trace_faces() const {
  std::map<Dart, int> dart_face;
  std::vector<std::vector<Dart>> faces;
  for (const auto& [sid, s] : segs) {
    (void)s;
    for (bool fwd : {true, false}) {
      Dart d0{sid, fwd};
      if (dart_face.count(d0)) continue;
      int fid = static_cast<int>(faces.size());
      std::vector<Dart> walk;
      Dart d = d0;
      do {
        dart_face[d] = fid;
        walk.push_back(d);
        NodeId n = head(d);
        int nxt = rotation_next(n, d.seg);
        d = dart_at(n, nxt);
      } while (!(d == d0));
      faces.push_back(std::move(walk));
    }
  }
  int outer_id = -1;
  if (!segs.empty()) {
    auto it = dart_face.find(outer);
    require(it != dart_face.end(), ErrCode::Struct, "outer dart missing from face map");
    outer_id = it->second;
  }
  return FaceSet(std::move(faces), std::move(dart_face), outer_id);
}

std::vector<PairCount> Drawing::crossing_pairs() const {
  std::map<std::pair<EdgeId, EdgeId>, int> m;
  for (const auto& [x, rec] : crossings) {
    (void)x;
    m[{rec.e1, rec.e2}]++;
  }
  std::vector<PairCount> out;
  for (const auto& [k, v] : m) out.push_back(PairCount{k.first, k.second, v});
  return out;
}

CycleSideResult Drawing::cycle_side(const std::vector<Dart>& walk) const {
  require(!walk.empty(), ErrCode::NotSimpleCycle, "empty walk");
  std::set<NodeId> on_cycle;
  std::set<int> cycle_segs;
  for (size_t i = 0; i < walk.size(); ++i) {
    const Dart& d = walk[i];
    require(segs.count(d.seg) != 0, ErrCode::Ref, "walk references unknown segment");
    require(head(d) == tail(walk[(i + 1) % walk.size()]), ErrCode::NotSimpleCycle, "walk not closed");
    require(on_cycle.insert(tail(d)).second, ErrCode::NotSimpleCycle, "walk repeats node " + tail(d));
    cycle_segs.insert(d.seg);
  }
  FaceSet fs = trace_faces();
  // Union faces across every segment not on the cycle.
  std::vector<int> parent(static_cast<size_t>(fs.n_faces()));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[static_cast<size_t>(a)] != a) {
      parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
      a = parent[static_cast<size_t>(a)];
    }
    return a;
  };
  auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };
  for (const auto& [sid, s] : segs) {
    (void)s;
    if (cycle_segs.count(sid)) continue;
    unite(fs.face_of(Dart{sid, true}), fs.face_of(Dart{sid, false}));
  }
  std::set<int> groups;
  for (int f = 0; f < fs.n_faces(); ++f) groups.insert(find(f));
  require(groups.size() == 2, ErrCode::NotSimpleCycle,
          "cycle does not separate the drawing into two sides");
  int outer_grp = find(fs.outer_face());
  CycleSideResult res;
  for (int f = 0; f < fs.n_faces(); ++f)
    if (find(f) != outer_grp) res.interior_faces.insert(f);
  for (const auto& [n, rot] : rotations) {
    if (rot.empty() || on_cycle.count(n)) continue;
    int f = fs.face_of(dart_at(n, rot.front()));
    if (res.interior_faces.count(f)) res.interior_vertices.insert(n);
  }
  return res;
}

int Drawing::face_at_corner(const FaceSet& fs, const Corner& c) const {
  const auto& rot = rotations.at(c.node);
  require(!rot.empty(), ErrCode::Internal, "corner at isolated node " + c.node);
  require(c.after_seg != -1, ErrCode::Internal, "unanchored corner at " + c.node);
  int nxt = rotation_next(c.node, c.after_seg);
  return fs.face_of(dart_at(c.node, nxt));
}

std::vector<Drawing> Drawing::components() const {
  // Union-find over nodes through segments.
  std::map<NodeId, NodeId> parent;
  std::function<NodeId(NodeId)> find = [&](NodeId a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  for (const auto& v : vertices) parent[v] = v;
  for (const auto& [x, rec] : crossings) {
    (void)rec;
    parent[x] = x;
  }
  auto unite = [&](const NodeId& a, const NodeId& b) { parent[find(a)] = find(b); };
  for (const auto& [sid, s] : segs) {
    (void)sid;
    unite(s.from, s.to);
  }
  // Edges may be undrawn; they still tie their endpoints together.
  for (const auto& [e, rec] : edges) {
    (void)e;
    unite(rec.a, rec.b);
  }
  std::map<NodeId, int> comp_of;
  std::vector<NodeId> reps;
  for (const auto& [n, p] : parent) {
    (void)p;
    NodeId r = find(n);
    if (!comp_of.count(r)) {
      comp_of[r] = static_cast<int>(reps.size());
      reps.push_back(r);
    }
  }
  int nc = static_cast<int>(reps.size());
  std::vector<Drawing> out(static_cast<size_t>(nc));
  for (const auto& v : vertices) out[static_cast<size_t>(comp_of[find(v)])].vertices.insert(v);
  for (const auto& [e, rec] : edges) {
    Drawing& d = out[static_cast<size_t>(comp_of[find(rec.a)])];
    d.edges[e] = rec;
    auto it = routes.find(e);
    if (it != routes.end()) d.routes[e] = it->second;
  }
  for (const auto& [x, rec] : crossings) out[static_cast<size_t>(comp_of[find(x)])].crossings[x] = rec;
  for (const auto& [sid, s] : segs) out[static_cast<size_t>(comp_of[find(s.from)])].segs[sid] = s;
  for (const auto& [n, rot] : rotations) out[static_cast<size_t>(comp_of[find(n)])].rotations[n] = rot;
  for (auto& d : out) d.meta = meta;
  // Outer darts: keep the global one in its component; others take their smallest segment.
  int primary = -1;
  if (!segs.empty()) primary = comp_of[find(seg(outer.seg).from)];
  for (int i = 0; i < nc; ++i) {
    Drawing& d = out[static_cast<size_t>(i)];
    if (i == primary) {
      d.outer = outer;
    } else if (!d.segs.empty()) {
      d.outer = Dart{d.segs.begin()->first, true};
    }
  }
  // Move the primary component first for deterministic merging.
  if (primary > 0) std::swap(out[0], out[static_cast<size_t>(primary)]);
  return out;
}

Drawing Drawing::merge(const std::vector<Drawing>& parts) {
  Drawing m;
  int seg_counter = 0;
  int cross_counter = 0;
  bool outer_set = false;
  for (const auto& p : parts) {
    std::map<int, int> segmap;
    std::map<NodeId, NodeId> crossmap;
    for (const auto& [x, rec] : p.crossings) {
      NodeId nx;
      do {
        nx = "x" + std::to_string(cross_counter++);
      } while (m.has_node(nx) || p.has_node(nx));
      crossmap[x] = nx;
    }
    auto mapnode = [&](const NodeId& n) {
      auto it = crossmap.find(n);
      return it == crossmap.end() ? n : it->second;
    };
    for (const auto& v : p.vertices) m.vertices.insert(v);
    for (const auto& [e, rec] : p.edges) m.edges[e] = rec;
    for (const auto& [x, rec] : p.crossings) m.crossings[crossmap[x]] = rec;
    for (const auto& [sid, s] : p.segs) {
      segmap[sid] = seg_counter;
      m.segs[seg_counter++] = Seg{s.edge, mapnode(s.from), mapnode(s.to)};
    }
    for (const auto& [e, rt] : p.routes) {
      std::vector<int> nr;
      for (int s : rt) nr.push_back(segmap[s]);
      m.routes[e] = nr;
    }
    for (const auto& [n, rot] : p.rotations) {
      std::vector<int> nr;
      for (int s : rot) nr.push_back(segmap[s]);
      m.rotations[mapnode(n)] = nr;
    }
    for (const auto& [k, v] : p.meta)
      if (!m.meta.count(k)) m.meta[k] = v;
    if (!outer_set && !p.segs.empty()) {
      m.outer = Dart{segmap.at(p.outer.seg), p.outer.fwd};
      outer_set = true;
    }
  }
  return m;
}

bool Drawing::euler_ok() const {
  // Per connected component: v - e + f = 2 (f by tracing that component).
  std::map<NodeId, NodeId> parent;
  std::function<NodeId(NodeId)> find = [&](NodeId a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  for (const auto& v : vertices) parent[v] = v;
  for (const auto& [x, rec] : crossings) {
    (void)rec;
    parent[x] = x;
  }
  for (const auto& [sid, s] : segs) {
    (void)sid;
    parent[find(s.from)] = find(s.to);
  }
  std::map<NodeId, long> nv, ne, nf;
  for (const auto& v : vertices) nv[find(v)]++;
  for (const auto& [x, rec] : crossings) {
    (void)rec;
    nv[find(x)]++;
  }
  for (const auto& [sid, s] : segs) {
    (void)sid;
    ne[find(s.from)]++;
  }
  FaceSet fs = trace_faces();
  for (const auto& walk : fs.faces()) nf[find(tail(walk.front()))]++;
  for (const auto& [rep, v] : nv) {
    long e = ne.count(rep) ? ne.at(rep) : 0;
    long f = nf.count(rep) ? nf.at(rep) : 0;
    if (e == 0) {
      if (v != 1) return false;
      continue;
    }
    if (v - e + f != 2) return false;
  }
  return true;
}

NodeId Drawing::fresh_crossing_id() {
  NodeId id;
  do {
    id = "x" + std::to_string(next_cross_++);
  } while (has_node(id));
  return id;
}

int Drawing::fresh_seg_id() {
  if (!segs.empty()) next_seg_ = std::max(next_seg_, segs.rbegin()->first + 1);
  return next_seg_++;
}

int Drawing::max_seg_id() const { return segs.empty() ? -1 : segs.rbegin()->first; }

void Drawing::add_vertex(const NodeId& v) {
  require(!is_crossing(v), ErrCode::Struct, "vertex id collides with crossing: " + v);
  vertices.insert(v);
  rotations.emplace(v, std::vector<int>{});
}

void Drawing::add_abstract_edge(const EdgeId& e, const NodeId& a, const NodeId& b) {
  require(a != b, ErrCode::Struct, "loop edge " + e);
  require(is_vertex(a) && is_vertex(b), ErrCode::Ref, "endpoint missing for " + e);
  require(!edges.count(e), ErrCode::Struct, "duplicate edge id " + e);
  edges[e] = EdgeRec{std::min(a, b), std::max(a, b)};
  routes[e] = {};
}

int Drawing::add_drawn_edge(const EdgeId& e, const NodeId& a, const NodeId& b) {
  add_abstract_edge(e, a, b);
  int s = fresh_seg_id();
  segs[s] = Seg{e, a, b};
  routes[e] = {s};
  return s;
}

std::pair<int, int> Drawing::split_seg(int s, const NodeId& mid) {
  Seg old = seg(s);
  int s1 = fresh_seg_id();
  int s2 = fresh_seg_id();
  segs[s1] = Seg{old.edge, old.from, mid};
  segs[s2] = Seg{old.edge, mid, old.to};
  auto& rt = routes.at(old.edge);
  auto it = std::find(rt.begin(), rt.end(), s);
  require(it != rt.end(), ErrCode::Internal, "segment missing from route");
  *it = s1;
  rt.insert(std::next(it), s2);
  // Endpoint rotations keep their angular slot with the new fragment ids.
  for (auto& entry : rotations.at(old.from))
    if (entry == s) entry = s1;
  for (auto& entry : rotations.at(old.to))
    if (entry == s) entry = s2;
  if (outer.seg == s) outer = outer.fwd ? Dart{s1, true} : Dart{s2, false};
  segs.erase(s);
  return {s1, s2};
}

void Drawing::dissolve_crossing(const NodeId& x) {
  auto itc = crossings.find(x);
  require(itc != crossings.end(), ErrCode::Ref, "not a crossing: " + x);
  CrossingRec rec = itc->second;
  for (const EdgeId& e : {rec.e1, rec.e2}) {
    auto& rt = routes.at(e);
    int in_seg = -1, out_seg = -1;
    size_t pos = 0;
    for (size_t i = 0; i + 1 < rt.size(); ++i) {
      if (seg(rt[i]).to == x) {
        in_seg = rt[i];
        out_seg = rt[i + 1];
        pos = i;
        break;
      }
    }
    require(in_seg != -1, ErrCode::Internal, "crossing not on route of " + e);
    NodeId far = seg(out_seg).to;
    segs.at(in_seg).to = far;
    for (auto& entry : rotations.at(far))
      if (entry == out_seg) entry = in_seg;
    if (outer.seg == out_seg) outer = Dart{in_seg, outer.fwd};
    rt.erase(rt.begin() + static_cast<long>(pos) + 1);
    segs.erase(out_seg);
  }
  rotations.erase(x);
  crossings.erase(itc);
}

void Drawing::delete_edge_arc(const EdgeId& e) {
  auto itr = routes.find(e);
  require(itr != routes.end(), ErrCode::Ref, "unknown edge " + e);
  if (itr->second.empty()) return;
  // Relocate the outer dart if it sits on this edge.
  if (!segs.empty() && seg(outer.seg).edge == e) {
    FaceSet fs = trace_faces();
    const auto& walk = fs.face(fs.face_of(outer));
    bool moved = false;
    for (const Dart& d : walk) {
      if (seg(d.seg).edge != e) {
        outer = d;
        moved = true;
        break;
      }
    }
    if (!moved) outer = Dart{-1, true};  // nothing else in this drawing
  }
  // Splice every partner edge through the crossings of e, then drop e's chain.
  std::vector<NodeId> xs;
  for (const NodeId& n : route_nodes(e))
    if (is_crossing(n)) xs.push_back(n);
  for (const NodeId& x : xs) {
    CrossingRec rec = crossings.at(x);
    EdgeId partner = rec.e1 == e ? rec.e2 : rec.e1;
    auto& prt = routes.at(partner);
    int in_seg = -1, out_seg = -1;
    size_t pos = 0;
    for (size_t i = 0; i + 1 < prt.size(); ++i) {
      if (seg(prt[i]).to == x) {
        in_seg = prt[i];
        out_seg = prt[i + 1];
        pos = i;
        break;
      }
    }
    require(in_seg != -1, ErrCode::Internal, "crossing not on partner route");
    NodeId far = seg(out_seg).to;
    segs.at(in_seg).to = far;
    for (auto& entry : rotations.at(far))
      if (entry == out_seg) entry = in_seg;
    if (outer.seg == out_seg) outer = Dart{in_seg, outer.fwd};
    prt.erase(prt.begin() + static_cast<long>(pos) + 1);
    segs.erase(out_seg);
    rotations.erase(x);
    crossings.erase(x);
  }
  // Remove e's own segments from endpoint rotations and the seg table.
  auto& rt = itr->second;
  NodeId u = seg(rt.front()).from, v = seg(rt.back()).to;
  auto& ru = rotations.at(u);
  ru.erase(std::remove(ru.begin(), ru.end(), rt.front()), ru.end());
  auto& rv = rotations.at(v);
  rv.erase(std::remove(rv.begin(), rv.end(), rt.back()), rv.end());
  for (int s : rt) segs.erase(s);
  rt.clear();
}

void Drawing::delete_edge(const EdgeId& e) {
  delete_edge_arc(e);
  routes.erase(e);
  edges.erase(e);
}

void Drawing::insert_rotation_after(const NodeId& n, int s, int after) {
  auto& rot = rotations[n];
  if (after == -1) {
    require(rot.empty(), ErrCode::Internal, "unanchored insertion at non-isolated node " + n);
    rot.push_back(s);
    return;
  }
  auto it = std::find(rot.begin(), rot.end(), after);
  require(it != rot.end(), ErrCode::Internal, "anchor dart missing at " + n);
  rot.insert(std::next(it), s);
}

void Drawing::reverse_route(const EdgeId& e) {
  auto& rt = routes.at(e);
  if (rt.empty()) return;
  bool outer_here = !segs.empty() && seg(outer.seg).edge == e;
  std::reverse(rt.begin(), rt.end());
  for (int s : rt) std::swap(segs.at(s).from, segs.at(s).to);
  if (outer_here) outer.fwd = !outer.fwd;
}

void Drawing::insert_routed_arc(const EdgeId& e, const Corner& corner_a,
                                const std::vector<CrossStep>& steps, const Corner& corner_b,
                                const NodeId& anchor_for_new) {
  require(routes.count(e) && routes.at(e).empty(), ErrCode::Internal, "edge already drawn: " + e);
  const EdgeRec& rec = edges.at(e);
  require((corner_a.node == rec.a && corner_b.node == rec.b) ||
              (corner_a.node == rec.b && corner_b.node == rec.a),
          ErrCode::Internal, "corner endpoints mismatch for " + e);
  for (const CrossStep& st : steps)
    require(seg(st.seg).edge != e, ErrCode::SelfCross, "arc would cross its own edge " + e);

  // Corner anchors may be split below; remember how fragments map.
  std::map<int, std::pair<int, int>> frag;
  auto resolve_anchor = [&](const NodeId& n, int s) {
    while (frag.count(s)) {
      auto [s1, s2] = frag.at(s);
      const Seg& a = segs.at(s1);
      s = (a.from == n || a.to == n) ? s1 : s2;
    }
    return s;
  };

  struct NewCross {
    NodeId x;
    int s1, s2;
    bool from_left;
  };
  std::vector<NewCross> made;
  for (const CrossStep& st : steps) {
    NodeId x = fresh_crossing_id();
    const Seg& target = seg(st.seg);
    EdgeId lo = std::min(e, target.edge), hi = std::max(e, target.edge);
    crossings[x] = CrossingRec{lo, hi, anchor_for_new};
    auto [s1, s2] = split_seg(st.seg, x);
    frag[st.seg] = {s1, s2};
    made.push_back(NewCross{x, s1, s2, st.from_left});
  }
  // Build the chain of new segments.
  std::vector<int> chain;
  NodeId prev = corner_a.node;
  for (const NewCross& nc : made) {
    int ns = fresh_seg_id();
    segs[ns] = Seg{e, prev, nc.x};
    chain.push_back(ns);
    prev = nc.x;
  }
  int last = fresh_seg_id();
  segs[last] = Seg{e, prev, corner_b.node};
  chain.push_back(last);
  routes.at(e) = chain;
  // Rotations at the new crossings: entering from the left of (from->to) gives
  // ccw order (out, toward_to, in, toward_from); from the right swaps the pair.
  for (size_t i = 0; i < made.size(); ++i) {
    const NewCross& nc = made[i];
    int in_seg = chain[i];
    int out_seg = chain[i + 1];
    if (nc.from_left)
      rotations[nc.x] = {out_seg, nc.s2, in_seg, nc.s1};
    else
      rotations[nc.x] = {out_seg, nc.s1, in_seg, nc.s2};
  }
  insert_rotation_after(corner_a.node, chain.front(),
                        corner_a.after_seg == -1 ? -1 : resolve_anchor(corner_a.node, corner_a.after_seg));
  insert_rotation_after(corner_b.node, chain.back(),
                        corner_b.after_seg == -1 ? -1 : resolve_anchor(corner_b.node, corner_b.after_seg));
  if (outer.seg == -1) outer = Dart{chain.front(), true};
}

std::string Drawing::canonical_form() const {
  // Rename crossings in first-encounter order along sorted edges.
  std::map<NodeId, NodeId> cmap;
  int k = 0;
  for (const auto& [e, rt] : routes) {
    (void)rt;
    for (const NodeId& n : route_nodes(e))
      if (is_crossing(n) && !cmap.count(n)) cmap[n] = "q" + std::to_string(k++);
  }
  auto mapn = [&](const NodeId& n) {
    auto it = cmap.find(n);
    return it == cmap.end() ? n : it->second;
  };
  // Canonical route orientation: first mapped node <= last mapped node.
  std::map<EdgeId, std::vector<NodeId>> croutes;
  std::map<EdgeId, bool> flipped;
  for (const auto& [e, rt] : routes) {
    if (rt.empty()) {
      croutes[e] = {};
      flipped[e] = false;
      continue;
    }
    std::vector<NodeId> nodes;
    for (const NodeId& n : route_nodes(e)) nodes.push_back(mapn(n));
    bool fl = nodes.front() > nodes.back();
    if (fl) std::reverse(nodes.begin(), nodes.end());
    croutes[e] = nodes;
    flipped[e] = fl;
  }
  // A dart in canonical terms: (edge, canonical segment index).
  auto canon_dart = [&](int sid) {
    const Seg& s = seg(sid);
    const auto& rt = routes.at(s.edge);
    int idx = 0;
    for (size_t i = 0; i < rt.size(); ++i)
      if (rt[i] == sid) idx = static_cast<int>(i);
    if (flipped.at(s.edge)) idx = static_cast<int>(rt.size()) - 1 - idx;
    return std::make_pair(s.edge, idx);
  };
  std::ostringstream os;
  os << "V:";
  for (const auto& v : vertices) os << " " << v;
  os << "\n";
  for (const auto& [e, rec] : edges) os << "E " << e << " " << rec.a << " " << rec.b << "\n";
  for (const auto& [e, nodes] : croutes) {
    os << "R " << e << ":";
    for (const auto& n : nodes) os << " " << n;
    os << "\n";
  }
  std::map<NodeId, std::vector<int>> rots;
  for (const auto& [n, rot] : rotations) rots[mapn(n)] = rot;
  for (const auto& [n, rot] : rots) {
    os << "T " << n << ":";
    if (!rot.empty()) {
      std::vector<std::pair<EdgeId, int>> ds;
      for (int s : rot) ds.push_back(canon_dart(s));
      size_t best = 0;
      for (size_t i = 1; i < ds.size(); ++i)
        if (ds[i] < ds[best]) best = i;
      for (size_t i = 0; i < ds.size(); ++i) {
        const auto& d = ds[(best + i) % ds.size()];
        os << " " << d.first << "/" << d.second;
      }
    }
    os << "\n";
  }
  if (!segs.empty()) {
    auto d = canon_dart(outer.seg);
    bool fwd = outer.fwd != flipped.at(seg(outer.seg).edge);
    os << "O " << d.first << "/" << d.second << "/" << (fwd ? "+" : "-") << "\n";
  }
  return os.str();
}

std::optional<RoutedPath> route_min_crossings(const Drawing& d, const FaceSet& fs,
                                              const std::vector<Corner>& from,
                                              const std::vector<Corner>& to,
                                              const std::set<EdgeId>& crossable,
                                              const std::set<EdgeId>& cap1) {
  // State: (face, subset of cap1 edges already crossed).
  std::vector<EdgeId> capv(cap1.begin(), cap1.end());
  require(capv.size() <= 8, ErrCode::Internal, "too many capped edges");
  auto cap_bit = [&](const EdgeId& e) -> int {
    for (size_t i = 0; i < capv.size(); ++i)
      if (capv[i] == e) return static_cast<int>(i);
    return -1;
  };
  int nstates = fs.n_faces() << capv.size();
  std::vector<int> prev_state(static_cast<size_t>(nstates), -2);
  std::vector<CrossStep> prev_step(static_cast<size_t>(nstates));
  std::map<int, Corner> target_face;  // face -> first target corner on it
  for (const auto& c : to) {
    int f = d.face_at_corner(fs, c);
    if (!target_face.count(f)) target_face[f] = c;
  }
  std::deque<int> q;
  std::map<int, Corner> start_of;  // start state -> start corner
  for (const auto& c : from) {
    int f = d.face_at_corner(fs, c);
    int st = f << capv.size() | 0;
    if (prev_state[static_cast<size_t>(st)] == -2) {
      prev_state[static_cast<size_t>(st)] = -1;
      start_of[st] = c;
      q.push_back(st);
    }
  }
  int accept = -1;
  while (!q.empty()) {
    int st = q.front();
    q.pop_front();
    int f = st >> capv.size();
    int used = st & ((1 << capv.size()) - 1);
    if (target_face.count(f)) {
      accept = st;
      break;
    }
    for (const Dart& bd : fs.face(f)) {
      const Seg& s = d.seg(bd.seg);
      if (!crossable.count(s.edge)) continue;
      int bit = cap_bit(s.edge);
      int nused = used;
      if (bit >= 0) {
        if (used & (1 << bit)) continue;
        nused = used | (1 << bit);
      }
      int other = fs.face_of(Drawing::rev(bd));
      int nst = other << capv.size() | nused;
      if (prev_state[static_cast<size_t>(nst)] != -2) continue;
      prev_state[static_cast<size_t>(nst)] = st;
      // We are on face f; the dart (seg, fwd=true) lies on the left side's face.
      prev_step[static_cast<size_t>(nst)] = CrossStep{bd.seg, fs.face_of(Dart{bd.seg, true}) == f};
      q.push_back(nst);
    }
  }
  if (accept == -1) return std::nullopt;
  RoutedPath rp;
  rp.end = target_face.at(accept >> capv.size());
  std::vector<CrossStep> rev_steps;
  int st = accept;
  while (prev_state[static_cast<size_t>(st)] >= 0) {
    rev_steps.push_back(prev_step[static_cast<size_t>(st)]);
    st = prev_state[static_cast<size_t>(st)];
  }
  rp.start = start_of.at(st);
  rp.steps.assign(rev_steps.rbegin(), rev_steps.rend());
  return rp;
}

}  // namespace qpr
