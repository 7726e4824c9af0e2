#pragma once

#include <map>
#include <vector>

#include "qpr/drawing.hpp"

namespace qpr {

struct Vec {
  double x = 0, y = 0;
};

inline Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
inline Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
inline Vec operator*(double s, Vec a) { return {s * a.x, s * a.y}; }
inline double cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }

// An edge drawn as a polyline; pts includes both endpoint positions.
struct PolyEdge {
  EdgeId id;
  NodeId a, b;
  std::vector<Vec> pts;
};

// Proper (interior) intersection of segments ab and cd.
bool proper_intersect(Vec a, Vec b, Vec c, Vec d, Vec* out, double* t_ab, double* t_cd);

// Builds a combinatorial drawing from a straight-line/polyline picture.
// Positions must be in general position: distinct nodes, no three edges through
// one point, no intersections at waypoints, no overlapping segments.
Drawing build_from_geometry(const std::map<NodeId, Vec>& pos, std::vector<PolyEdge> edges);

// Perturbed placement of six rim corners on a circle, counterclockwise.
Vec rim_position(int i);

// A chord of the rim disc, drawn through optional interior waypoints.
struct ChordSpec {
  EdgeId id;
  NodeId a, b;
  std::vector<Vec> mid;
};

// Draws the given chords inside a face of `host` whose boundary carries the six
// rim corners in this cyclic order. The chords' edges must exist and be undrawn;
// `attach` gives the rotation slot for each rim corner.
void graft_chords(Drawing& host, const std::vector<NodeId>& rim,
                  const std::map<NodeId, Corner>& attach, const std::vector<ChordSpec>& chords);

}  // namespace qpr
