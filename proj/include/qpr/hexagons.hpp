#pragma once

#include <array>
#include <map>
#include <set>
#include <vector>

#include "qpr/drawing.hpp"

namespace qpr {

struct Triple {
  std::array<EdgeId, 3> e;  // sorted

  bool operator<(const Triple& o) const { return e < o.e; }
  bool operator==(const Triple& o) const { return e == o.e; }
  bool contains(const EdgeId& x) const { return e[0] == x || e[1] == x || e[2] == x; }
};

enum class Tangledness { Tangled, Untangled };

struct Hexagon {
  int id = -1;
  Triple triple;
  // The six endpoints in cyclic order along the boundary walk, smallest first.
  std::vector<NodeId> corners;
  std::set<NodeId> corner_set;
  std::map<NodeId, EdgeId> chord_of;  // corner -> its triple edge
  // Boundary walk of the 3-edge arrangement (darts of the host drawing),
  // starting with the portion that leaves corners[0].
  std::vector<Dart> fh_walk;
  std::set<EdgeId> boundary_edges;  // the 6 edges joining consecutive corners
  std::set<int> region_faces;       // faces bounded solely by triple/boundary edges

  int corner_index(const NodeId& v) const;
  NodeId corner_next(const NodeId& v) const;  // next corner along the stored cyclic order
  NodeId corner_prev(const NodeId& v) const;
  // Steps from a to b following the stored cyclic order (1..5).
  int corner_distance(const NodeId& a, const NodeId& b) const;
  NodeId antipode(const NodeId& v) const;
};

// All unordered triples of pairwise crossing edges. Requires a 2-plane drawing
// in which no two edges cross twice.
std::vector<Triple> find_three_crossings(const Drawing& d);

Tangledness classify_tangled(const Drawing& d, const Triple& t);

// The boundary walk of the sub-arrangement spanned by the triple (the face
// touching all six endpoints). Fails with NotTangled when the triple is tangled.
std::vector<Dart> fh_walk(const Drawing& d, const Triple& t);

// Builds the full hexagon structure. Requires untangled triple and all six
// boundary edges present (BoundaryMissing otherwise).
Hexagon build_region(const Drawing& d, const Triple& t, int id);

// Observation-level sanity: two hexagons share at most five vertices, three
// share at most two, and triples are pairwise edge-disjoint.
void check_hexagon_overlaps(const std::vector<Hexagon>& hs);

}  // namespace qpr
