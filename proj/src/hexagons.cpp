#include "qpr/hexagons.hpp"

#include <algorithm>

namespace qpr {

int Hexagon::corner_index(const NodeId& v) const {
  for (size_t i = 0; i < corners.size(); ++i)
    if (corners[i] == v) return static_cast<int>(i);
  fail(ErrCode::Internal, "not a corner of hexagon: " + v);
}

NodeId Hexagon::corner_next(const NodeId& v) const {
  return corners[(static_cast<size_t>(corner_index(v)) + 1) % 6];
}

NodeId Hexagon::corner_prev(const NodeId& v) const {
  return corners[(static_cast<size_t>(corner_index(v)) + 5) % 6];
}

int Hexagon::corner_distance(const NodeId& a, const NodeId& b) const {
  int d = (corner_index(b) - corner_index(a) + 6) % 6;
  require(d != 0, ErrCode::Internal, "corner distance of a corner to itself");
  return d;
}

NodeId Hexagon::antipode(const NodeId& v) const {
  return corners[(static_cast<size_t>(corner_index(v)) + 3) % 6];
}

std::vector<Triple> find_three_crossings(const Drawing& d) {
  std::map<EdgeId, std::set<EdgeId>> partners;
  for (const auto& pc : d.crossing_pairs()) {
    require(pc.count == 1, ErrCode::DisjointnessViolated,
            "edges cross more than once: " + pc.e1 + ", " + pc.e2);
    partners[pc.e1].insert(pc.e2);
    partners[pc.e2].insert(pc.e1);
  }
  for (const auto& [e, ps] : partners)
    require(ps.size() <= 2, ErrCode::DisjointnessViolated, "edge crossed more than twice: " + e);
  std::set<Triple> triples;
  for (const auto& [e, ps] : partners) {
    if (ps.size() != 2) continue;
    EdgeId p = *ps.begin(), q = *std::next(ps.begin());
    if (partners.at(p).count(q)) {
      std::array<EdgeId, 3> t{e, p, q};
      std::sort(t.begin(), t.end());
      triples.insert(Triple{t});
    }
  }
  // Triples are pairwise edge-disjoint in a 2-plane drawing.
  std::set<EdgeId> used;
  for (const auto& t : triples)
    for (const auto& e : t.e)
      require(used.insert(e).second, ErrCode::DisjointnessViolated,
              "edge in two 3-crossings: " + e);
  return std::vector<Triple>(triples.begin(), triples.end());
}

namespace {

// The triple's edges with everything else stripped away.
Drawing triple_subdrawing(const Drawing& d, const Triple& t) {
  Drawing s;
  std::set<EdgeId> te(t.e.begin(), t.e.end());
  for (const auto& e : t.e) {
    const EdgeRec& rec = d.edges.at(e);
    s.vertices.insert(rec.a);
    s.vertices.insert(rec.b);
    s.edges[e] = rec;
    require(d.routes.count(e) && !d.routes.at(e).empty(), ErrCode::Ref, "triple edge undrawn: " + e);
    s.routes[e] = d.routes.at(e);
    for (int sid : d.routes.at(e)) s.segs[sid] = d.seg(sid);
  }
  for (const auto& e : t.e) {
    for (const NodeId& n : d.route_nodes(e)) {
      if (!d.is_crossing(n)) continue;
      const CrossingRec& cr = d.crossings.at(n);
      require(te.count(cr.e1) && te.count(cr.e2), ErrCode::Internal,
              "triple edge crosses a non-triple edge at " + n);
      s.crossings[n] = cr;
      s.rotations[n] = d.rotations.at(n);
    }
  }
  for (const auto& v : s.vertices) {
    std::vector<int> rot;
    for (int sid : d.rotations.at(v)) {
      auto it = d.segs.find(sid);
      if (it != d.segs.end() && te.count(it->second.edge)) rot.push_back(sid);
    }
    s.rotations[v] = rot;
  }
  if (!s.segs.empty()) s.outer = Dart{s.segs.begin()->first, true};
  return s;
}

// Returns the walk of the face touching all six endpoints, or empty.
std::vector<Dart> all_endpoint_face(const Drawing& sub, const std::set<NodeId>& endpoints) {
  FaceSet fs = sub.trace_faces();
  for (const auto& walk : fs.faces()) {
    std::set<NodeId> touched;
    for (const Dart& d : walk) touched.insert(sub.tail(d));
    bool all = true;
    for (const auto& v : endpoints)
      if (!touched.count(v)) all = false;
    if (all) return walk;
  }
  return {};
}

std::set<NodeId> triple_endpoints(const Drawing& d, const Triple& t) {
  std::set<NodeId> eps;
  for (const auto& e : t.e) {
    eps.insert(d.edges.at(e).a);
    eps.insert(d.edges.at(e).b);
  }
  return eps;
}

}  // namespace

Tangledness classify_tangled(const Drawing& d, const Triple& t) {
  Drawing sub = triple_subdrawing(d, t);
  std::set<NodeId> eps = triple_endpoints(d, t);
  require(eps.size() == 6, ErrCode::Struct, "3-crossing with adjacent edges");
  return all_endpoint_face(sub, eps).empty() ? Tangledness::Tangled : Tangledness::Untangled;
}

std::vector<Dart> fh_walk(const Drawing& d, const Triple& t) {
  Drawing sub = triple_subdrawing(d, t);
  std::set<NodeId> eps = triple_endpoints(d, t);
  require(eps.size() == 6, ErrCode::Struct, "3-crossing with adjacent edges");
  std::vector<Dart> walk = all_endpoint_face(sub, eps);
  require(!walk.empty(), ErrCode::NotTangled, "triple is tangled: " + t.e[0] + "," + t.e[1] + "," + t.e[2]);
  return walk;
}

Hexagon build_region(const Drawing& d, const Triple& t, int id) {
  Hexagon h;
  h.id = id;
  h.triple = t;
  std::vector<Dart> walk = fh_walk(d, t);
  std::set<NodeId> eps = triple_endpoints(d, t);
  // Corner order along the walk; reversed so the region interior is on the
  // left of the stored cyclic order.
  std::vector<NodeId> order;
  for (const Dart& w : walk) {
    NodeId n = d.tail(w);
    if (eps.count(n)) order.push_back(n);
  }
  require(order.size() == 6, ErrCode::Internal, "boundary walk does not visit all endpoints once");
  std::reverse(order.begin(), order.end());
  auto smallest = std::min_element(order.begin(), order.end());
  std::rotate(order.begin(), smallest, order.end());
  h.corners = order;
  h.corner_set = eps;
  for (const auto& e : t.e) {
    h.chord_of[d.edges.at(e).a] = e;
    h.chord_of[d.edges.at(e).b] = e;
  }
  // Chord endpoints must be antipodal along the boundary.
  for (const auto& e : t.e)
    require(h.antipode(d.edges.at(e).a) == d.edges.at(e).b, ErrCode::Internal,
            "triple edge is not a long diagonal: " + e);
  // Align the walk to start at the portion that leaves corners[0].
  {
    size_t start = 0;
    for (size_t i = 0; i < walk.size(); ++i)
      if (d.tail(walk[i]) == h.corners[0]) start = i;
    std::rotate(walk.begin(), walk.begin() + static_cast<long>(start), walk.end());
    h.fh_walk = walk;
  }
  // Boundary edges between consecutive corners.
  std::map<std::pair<NodeId, NodeId>, EdgeId> by_ends;
  for (const auto& [e, rec] : d.edges) by_ends[{rec.a, rec.b}] = e;
  for (int i = 0; i < 6; ++i) {
    NodeId u = h.corners[static_cast<size_t>(i)], w = h.corners[(static_cast<size_t>(i) + 1) % 6];
    auto it = by_ends.find({std::min(u, w), std::max(u, w)});
    require(it != by_ends.end(), ErrCode::BoundaryMissing, "boundary edge absent: " + u + "-" + w);
    h.boundary_edges.insert(it->second);
  }
  // Informational: faces bounded only by triple and boundary edges.
  std::set<EdgeId> own(t.e.begin(), t.e.end());
  own.insert(h.boundary_edges.begin(), h.boundary_edges.end());
  FaceSet fs = d.trace_faces();
  for (int f = 0; f < fs.n_faces(); ++f) {
    if (f == fs.outer_face()) continue;
    bool inside = true;
    bool touches = false;
    for (const Dart& w : fs.face(f)) {
      if (!own.count(d.seg(w.seg).edge)) inside = false;
      if (own.count(d.seg(w.seg).edge) && !h.boundary_edges.count(d.seg(w.seg).edge)) touches = true;
    }
    if (inside && touches) h.region_faces.insert(f);
  }
  return h;
}

void check_hexagon_overlaps(const std::vector<Hexagon>& hs) {
  for (size_t i = 0; i < hs.size(); ++i) {
    for (size_t j = i + 1; j < hs.size(); ++j) {
      std::vector<NodeId> shared;
      std::set_intersection(hs[i].corner_set.begin(), hs[i].corner_set.end(),
                            hs[j].corner_set.begin(), hs[j].corner_set.end(),
                            std::back_inserter(shared));
      require(shared.size() <= 5, ErrCode::Internal, "two hexagons share six vertices");
      for (size_t k = j + 1; k < hs.size(); ++k) {
        int triple_shared = 0;
        for (const auto& v : shared)
          if (hs[k].corner_set.count(v)) ++triple_shared;
        require(triple_shared <= 2, ErrCode::Internal, "three hexagons share three vertices");
      }
      for (const auto& e : hs[i].triple.e)
        require(!hs[j].triple.contains(e), ErrCode::DisjointnessViolated,
                "triples share an edge: " + e);
    }
  }
}

}  // namespace qpr
