#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qpr/error.hpp"

namespace qpr {

using NodeId = std::string;
using EdgeId = std::string;

// Abstract edge endpoints, stored with a < b.
struct EdgeRec {
  NodeId a, b;
};

struct CrossingRec {
  EdgeId e1, e2;   // e1 < e2
  NodeId anchor;   // vertex whose small neighborhood hosts this crossing ("" if none)
};

// One segment of an edge's route, oriented along the route.
struct Seg {
  EdgeId edge;
  NodeId from, to;
};

// A dart is a directed segment: fwd means traveling from -> to.
struct Dart {
  int seg = -1;
  bool fwd = true;

  bool operator==(const Dart& o) const { return seg == o.seg && fwd == o.fwd; }
  bool operator<(const Dart& o) const { return seg != o.seg ? seg < o.seg : fwd < o.fwd; }
};

// A corner at a node: the gap in the rotation immediately counterclockwise
// after dart `after_seg`. after_seg == -1 means the node has no darts yet.
struct Corner {
  NodeId node;
  int after_seg = -1;
};

// Where a routed arc crosses an existing segment, and from which side it enters
// (left = left of the segment's from->to direction).
struct CrossStep {
  int seg = -1;
  bool from_left = true;
};

class FaceSet {
 public:
  FaceSet() = default;
  FaceSet(std::vector<std::vector<Dart>> faces, std::map<Dart, int> dart_face, int outer);

  int n_faces() const { return static_cast<int>(faces_.size()); }
  const std::vector<std::vector<Dart>>& faces() const { return faces_; }
  const std::vector<Dart>& face(int id) const { return faces_.at(static_cast<size_t>(id)); }
  int face_of(const Dart& d) const;
  int outer_face() const { return outer_; }

 private:
  std::vector<std::vector<Dart>> faces_;
  std::map<Dart, int> dart_face_;
  int outer_ = -1;
};

struct CycleSideResult {
  std::set<int> interior_faces;
  std::set<NodeId> interior_vertices;  // real vertices and crossing nodes strictly inside
};

struct PairCount {
  EdgeId e1, e2;  // e1 < e2
  int count = 0;
};

// Combinatorial representation of a topological drawing: the abstract graph
// plus its planarization (crossings as degree-4 nodes) and a rotation system.
class Drawing {
 public:
  // --- data (kept public; the type is a value and the modules below are the API) ---
  std::set<NodeId> vertices;
  std::map<EdgeId, EdgeRec> edges;
  std::map<NodeId, CrossingRec> crossings;
  std::map<int, Seg> segs;
  std::map<EdgeId, std::vector<int>> routes;     // chained seg ids; empty = edge undrawn
  std::map<NodeId, std::vector<int>> rotations;  // ccw order of incident seg ids
  Dart outer;
  std::map<std::string, std::string> meta;

  // --- basic queries ---
  bool is_crossing(const NodeId& n) const { return crossings.count(n) != 0; }
  bool is_vertex(const NodeId& n) const { return vertices.count(n) != 0; }
  bool has_node(const NodeId& n) const { return is_crossing(n) || is_vertex(n); }
  const Seg& seg(int id) const;
  NodeId tail(const Dart& d) const { return d.fwd ? seg(d.seg).from : seg(d.seg).to; }
  NodeId head(const Dart& d) const { return d.fwd ? seg(d.seg).to : seg(d.seg).from; }
  static Dart rev(const Dart& d) { return Dart{d.seg, !d.fwd}; }
  // The dart at node n along segment s, pointing away from n.
  Dart dart_at(const NodeId& n, int s) const;
  int degree(const NodeId& n) const;
  std::vector<NodeId> route_nodes(const EdgeId& e) const;  // [endpoint, crossings..., endpoint]
  // Crossings shared by a pair of edges.
  std::vector<NodeId> shared_crossings(const EdgeId& a, const EdgeId& b) const;
  int crossing_count(const EdgeId& e) const;
  bool adjacent_edges(const EdgeId& a, const EdgeId& b) const;
  NodeId other_end(const EdgeId& e, const NodeId& v) const;
  bool edge_incident(const EdgeId& e, const NodeId& v) const;
  // Rotation position helpers.
  int rotation_index(const NodeId& n, int s) const;
  int rotation_next(const NodeId& n, int s) const;  // seg ccw-after s at n
  int rotation_prev(const NodeId& n, int s) const;

  // --- structure & faces ---
  void validate_structure() const;  // throws Error(Struct) on inconsistency
  FaceSet trace_faces() const;
  std::vector<PairCount> crossing_pairs() const;
  CycleSideResult cycle_side(const std::vector<Dart>& walk) const;
  // The face incident to the given corner.
  int face_at_corner(const FaceSet& fs, const Corner& c) const;
  // Splits into connected components (first one contains the outer dart when present).
  std::vector<Drawing> components() const;
  static Drawing merge(const std::vector<Drawing>& parts);
  bool euler_ok() const;

  // --- id allocation ---
  NodeId fresh_crossing_id();
  int fresh_seg_id();

  // --- construction helpers ---
  void add_vertex(const NodeId& v);
  void add_abstract_edge(const EdgeId& e, const NodeId& a, const NodeId& b);
  // Appends a single-segment drawn edge; caller fixes rotations afterwards.
  int add_drawn_edge(const EdgeId& e, const NodeId& a, const NodeId& b);

  // --- surgery primitives ---
  // Splits segment s at a new node (already registered as crossing); returns (s1, s2).
  std::pair<int, int> split_seg(int s, const NodeId& mid);
  // Removes a crossing node, splicing both edges' routes through it.
  void dissolve_crossing(const NodeId& x);
  // Erases edge e's arc (dissolving all its crossings); the abstract edge stays.
  void delete_edge_arc(const EdgeId& e);
  // Deletes an edge entirely (arc + abstract record).
  void delete_edge(const EdgeId& e);
  // Draws edge e (currently undrawn) from corner_a to corner_b crossing the given
  // segments in order. Crossing node ids are freshly allocated.
  void insert_routed_arc(const EdgeId& e, const Corner& corner_a,
                         const std::vector<CrossStep>& steps, const Corner& corner_b,
                         const NodeId& anchor_for_new = "");
  // Inserts seg s into n's rotation immediately ccw-after `after` (-1: append).
  void insert_rotation_after(const NodeId& n, int s, int after);
  // Reverses the stored traversal direction of a route (representation only).
  void reverse_route(const EdgeId& e);

  // Canonical text form with crossing ids normalized; equal strings <=> isomorphic
  // drawings up to crossing renaming.
  std::string canonical_form() const;

  int max_seg_id() const;

 private:
  int next_seg_ = 0;
  int next_cross_ = 0;
};

// Face-graph router: finds a crossing-minimal arc from one of `from` to one of
// `to`, crossing only segments of edges in `crossable` (empty set => nothing may
// be crossed). `cap1` edges may be crossed at most once each.
struct RoutedPath {
  Corner start;
  Corner end;
  std::vector<CrossStep> steps;
};
std::optional<RoutedPath> route_min_crossings(const Drawing& d, const FaceSet& fs,
                                              const std::vector<Corner>& from,
                                              const std::vector<Corner>& to,
                                              const std::set<EdgeId>& crossable,
                                              const std::set<EdgeId>& cap1);

}  // namespace qpr
