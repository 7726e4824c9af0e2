#pragma once

#include <optional>
#include <vector>

#include "qpr/drawing.hpp"
#include "qpr/hexagons.hpp"

namespace qpr {

struct NormalizeStats {
  int double_removed = 0;
  int adjacent_removed = 0;
  int untangled = 0;
  int edges_added = 0;
  int boundary_rerouted = 0;
};

// Exchanges the arcs of e1 and e2 between their two crossing points and smooths
// both crossings away. Total crossings drop by exactly two.
Drawing remove_double_crossing(Drawing d, const EdgeId& e1, const EdgeId& e2);

// Exchanges the arcs between the shared endpoint and the crossing, smoothing it
// away. Total crossings drop by exactly one.
Drawing remove_adjacent_crossing(Drawing d, const EdgeId& e1, const EdgeId& e2);

// Applies the two removals until neither pattern remains.
std::pair<Drawing, NormalizeStats> minimize_crossings(Drawing d);

// Redraws a tangled 3-crossing in canonical untangled position within the
// union of faces its edges occupy. Throws NotTangled when already untangled.
Drawing untangle(Drawing d, const Triple& t);

// Internal building block shared with the rerouting stage: deletes the three
// triple edges and redraws them as chords of the vacated face. When `g` is
// set, chord g->b is drawn so that, traversed from g->u, it crosses g->a first.
struct GOrder {
  EdgeId a, b;
  NodeId u;
};
Drawing regraft_triple(Drawing d, const Triple& t, const std::optional<GOrder>& g);

struct EnsureResult {
  Drawing drawing;
  std::vector<EdgeId> added_edges;
  std::vector<EdgeId> rerouted_edges;
};

// Makes every pair of consecutive hexagon-boundary vertices adjacent via a
// crossing-free edge, adding or rerouting edges drawn along the boundary walk.
EnsureResult ensure_hexagon_boundaries(Drawing d, const std::vector<Triple>& triples);

}  // namespace qpr
