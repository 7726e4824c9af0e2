#include <doctest.h>

#include "fixtures.hpp"
#include "qpr/drawing.hpp"
#include "qpr/geom.hpp"

using namespace qpr;
using namespace qpr::test;

TEST_CASE("face counts of small drawings") {
  // Euler gives v - e + f = 2 per connected drawing; the traced face count must agree.
  Drawing k3 = fx_k3();
  k3.validate_structure();
  CHECK(k3.trace_faces().n_faces() == 2);

  Drawing x = fx_x();
  x.validate_structure();
  CHECK(x.crossings.size() == 1);
  CHECK(x.trace_faces().n_faces() == 1);  // the planarization is a 4-star tree

  Drawing k4 = fx_k4();
  CHECK(k4.trace_faces().n_faces() == 4);

  Drawing hexa = fx_hexagon1();
  hexa.validate_structure();
  CHECK(hexa.vertices.size() == 6);
  CHECK(hexa.edges.size() == 9);
  CHECK(hexa.crossings.size() == 3);
  CHECK(hexa.segs.size() == 15);
  // v - e + f = 2 with 9 planarization nodes and 15 segments forces 8 faces.
  CHECK(hexa.trace_faces().n_faces() == 8);
  CHECK(hexa.euler_ok());
}

TEST_CASE("crossing_pairs reads the registry") {
  Drawing k3 = fx_k3();
  CHECK(k3.crossing_pairs().empty());

  Drawing dc = fx_double_cross();
  auto pcs = dc.crossing_pairs();
  REQUIRE(pcs.size() == 1);
  CHECK(pcs[0].e1 == "ea");
  CHECK(pcs[0].e2 == "eb");
  CHECK(pcs[0].count == 2);

  Drawing hexa = fx_hexagon1();
  pcs = hexa.crossing_pairs();
  REQUIRE(pcs.size() == 3);
  int total = 0;
  for (const auto& pc : pcs) {
    CHECK(pc.count == 1);
    total += pc.count;
  }
  CHECK(total == static_cast<int>(hexa.crossings.size()));
}

TEST_CASE("cycle_side classifies interiors") {
  Drawing k4 = fx_k4();
  auto walk = walk_of_vertices(k4, {"v0", "v1", "v2"});
  auto side = k4.cycle_side(walk);
  CHECK(side.interior_vertices == std::set<NodeId>{"v3"});

  Drawing hexa = fx_hexagon1();
  auto outer_cycle = walk_of_vertices(hexa, {"u1", "u2", "u3", "w1", "w2", "w3"});
  auto s2 = hexa.cycle_side(outer_cycle);
  CHECK(s2.interior_vertices.size() == 3);
  for (const auto& n : s2.interior_vertices) CHECK(hexa.is_crossing(n));
  CHECK(s2.interior_faces.size() == 7);

  // Any face boundary is a minimal region.
  FaceSet fs = k4.trace_faces();
  for (int f = 0; f < fs.n_faces(); ++f) {
    if (f == fs.outer_face()) continue;
    auto r = k4.cycle_side(fs.face(f));
    CHECK(r.interior_faces == std::set<int>{f});
    CHECK(r.interior_vertices.empty());
  }
}

TEST_CASE("cycle_side rejects non-simple walks") {
  Drawing k4 = fx_k4();
  auto walk = walk_of_vertices(k4, {"v0", "v1", "v3", "v2", "v3"});
  CHECK_THROWS_AS((void)k4.cycle_side(walk), Error);
}

TEST_CASE("components split and merge") {
  Drawing k3 = fx_k3();
  Drawing x = fx_x();
  std::vector<Drawing> parts{k3, x};
  Drawing m = Drawing::merge(parts);
  m.validate_structure();
  CHECK(m.euler_ok());
  auto comps = m.components();
  CHECK(comps.size() == 2);
  for (auto& c : comps) {
    c.validate_structure();
    CHECK(c.euler_ok());
  }
}

TEST_CASE("delete and reinsert an edge arc") {
  Drawing x = fx_x();
  // Rerouting eb around instead of across leaves a crossing-free drawing.
  x.delete_edge_arc("eb");
  CHECK(x.crossings.empty());
  x.validate_structure();
  FaceSet fs = x.trace_faces();
  // ea is a single segment now; route eb through either side.
  int s_ea = x.routes.at("ea").front();
  Corner ca{"b0", s_ea == -1 ? -1 : -1};
  (void)ca;
  // b0 and b1 are isolated now; attach them in the single face.
  x.insert_routed_arc("eb", Corner{"b0", -1}, {}, Corner{"b1", -1});
  x.validate_structure();
  CHECK(x.euler_ok());
  CHECK(x.crossings.empty());

  // And rerouting across ea again produces one crossing.
  x.delete_edge_arc("eb");
  x.insert_routed_arc("eb", Corner{"b0", -1}, {CrossStep{x.routes.at("ea").front(), true}},
                      Corner{"b1", -1});
  x.validate_structure();
  CHECK(x.euler_ok());
  CHECK(x.crossings.size() == 1);
}

TEST_CASE("routed arcs via the face router") {
  Drawing k4 = fx_k4();
  // Delete e23 and route it back: a crossing-free route must exist.
  k4.delete_edge_arc("e23");
  k4.validate_structure();
  FaceSet fs = k4.trace_faces();
  std::vector<Corner> from, to;
  for (int s : k4.rotations.at("v2")) from.push_back(Corner{"v2", s});
  for (int s : k4.rotations.at("v3")) to.push_back(Corner{"v3", s});
  auto rp = route_min_crossings(k4, fs, from, to, {}, {});
  REQUIRE(rp.has_value());
  CHECK(rp->steps.empty());
  k4.insert_routed_arc("e23", rp->start, rp->steps, rp->end);
  k4.validate_structure();
  CHECK(k4.euler_ok());
  CHECK(k4.trace_faces().n_faces() == 4);
}

TEST_CASE("canonical form is stable under crossing renames") {
  Drawing a = fx_hexagon1();
  Drawing b = fx_hexagon1();
  // Rename a crossing in b.
  NodeId old = b.crossings.begin()->first;
  CrossingRec rec = b.crossings.at(old);
  NodeId nn = "zz_renamed";
  b.crossings.erase(old);
  b.crossings[nn] = rec;
  for (auto& [sid, s] : b.segs) {
    if (s.from == old) s.from = nn;
    if (s.to == old) s.to = nn;
  }
  auto rot = b.rotations.at(old);
  b.rotations.erase(old);
  b.rotations[nn] = rot;
  b.validate_structure();
  CHECK(a.canonical_form() == b.canonical_form());
}
