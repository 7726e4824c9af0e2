#pragma once

#include <map>
#include <vector>

#include "qpr/drawing.hpp"
#include "qpr/geom.hpp"

namespace qpr::test {

inline PolyEdge pe(const EdgeId& id, const NodeId& a, const NodeId& b, std::vector<Vec> pts) {
  return PolyEdge{id, a, b, std::move(pts)};
}

inline Drawing fx_k3() {
  std::map<NodeId, Vec> pos{{"v0", {0, 0}}, {"v1", {4, 0}}, {"v2", {2, 3}}};
  std::vector<PolyEdge> es{
      pe("e01", "v0", "v1", {pos["v0"], pos["v1"]}),
      pe("e02", "v0", "v2", {pos["v0"], pos["v2"]}),
      pe("e12", "v1", "v2", {pos["v1"], pos["v2"]}),
  };
  return build_from_geometry(pos, es);
}

inline Drawing fx_k4() {
  std::map<NodeId, Vec> pos{{"v0", {0, 0}}, {"v1", {4, 0}}, {"v2", {2, 3.2}}, {"v3", {2, 1.1}}};
  std::vector<PolyEdge> es{
      pe("e01", "v0", "v1", {pos["v0"], pos["v1"]}),
      pe("e02", "v0", "v2", {pos["v0"], pos["v2"]}),
      pe("e03", "v0", "v3", {pos["v0"], pos["v3"]}),
      pe("e12", "v1", "v2", {pos["v1"], pos["v2"]}),
      pe("e13", "v1", "v3", {pos["v1"], pos["v3"]}),
      pe("e23", "v2", "v3", {pos["v2"], pos["v3"]}),
  };
  return build_from_geometry(pos, es);
}

// Two independent edges crossing once.
inline Drawing fx_x() {
  std::map<NodeId, Vec> pos{{"a0", {0, 0}}, {"a1", {4, 4}}, {"b0", {0, 4}}, {"b1", {4, 0.2}}};
  std::vector<PolyEdge> es{
      pe("ea", "a0", "a1", {pos["a0"], pos["a1"]}),
      pe("eb", "b0", "b1", {pos["b0"], pos["b1"]}),
  };
  return build_from_geometry(pos, es);
}

// Two independent edges crossing twice (one drawn as an S-curve), joined to a
// connector so the drawing is connected.
inline Drawing fx_double_cross() {
  std::map<NodeId, Vec> pos{{"a0", {0, 0}}, {"a1", {10, 0.2}}, {"b0", {1, -2}}, {"b1", {9, -2.1}}};
  std::vector<PolyEdge> es{
      pe("ea", "a0", "a1", {pos["a0"], pos["a1"]}),
      pe("eb", "b0", "b1", {pos["b0"], {3, 1.5}, {7, 1.6}, pos["b1"]}),
      pe("ec", "a0", "b0", {pos["a0"], pos["b0"]}),
  };
  return build_from_geometry(pos, es);
}

// C6 plus three pairwise-crossing long diagonals in canonical position.
inline Drawing fx_hexagon1() {
  std::map<NodeId, Vec> pos;
  const char* names[6] = {"u1", "u2", "u3", "w1", "w2", "w3"};
  for (int i = 0; i < 6; ++i) pos[names[i]] = 3.0 * rim_position(i);
  std::vector<PolyEdge> es;
  for (int i = 0; i < 6; ++i) {
    NodeId a = names[i], b = names[(i + 1) % 6];
    es.push_back(pe("s" + std::to_string(i), std::min(a, b), std::max(a, b),
                    {pos[a], pos[b]}));
    if (i < 3) {
      NodeId c = names[i], d = names[i + 3];
      es.push_back(pe("d" + std::to_string(i), std::min(c, d), std::max(c, d), {pos[c], pos[d]}));
    }
  }
  return build_from_geometry(pos, es);
}

// Two edges sharing endpoint v and crossing once.
inline Drawing fx_adjacent() {
  std::map<NodeId, Vec> pos{{"v", {0, 0}}, {"a1", {10, 0}}, {"a2", {9, 3}}};
  std::vector<PolyEdge> es{
      pe("e1", "a1", "v", {pos["v"], pos["a1"]}),
      pe("e2", "a2", "v", {pos["v"], {4, -1}, {6, 2}, pos["a2"]}),
  };
  return build_from_geometry(pos, es);
}

// As fx_adjacent, plus a third edge crossing e1 beyond the adjacent crossing.
inline Drawing fx_adjacent_y() {
  std::map<NodeId, Vec> pos{
      {"v", {0, 0}}, {"a1", {10, 0}}, {"a2", {9, 3}}, {"p", {7, 1.5}}, {"q", {8, -1}}};
  std::vector<PolyEdge> es{
      pe("e1", "a1", "v", {pos["v"], pos["a1"]}),
      pe("e2", "a2", "v", {pos["v"], {4, -1}, {6, 2}, pos["a2"]}),
      pe("e3", "p", "q", {pos["p"], pos["q"]}),
  };
  return build_from_geometry(pos, es);
}

// A tangled 3-crossing: b hooks around a's endpoint and c ends in the pocket.
inline Drawing fx_tangled() {
  std::map<NodeId, Vec> pos{{"ta", {0, 0}},  {"tb", {10, 0}}, {"tc", {2, 2}},
                            {"td", {6, 1.2}}, {"te", {7, 3}},  {"tf", {7.2, -0.5}}};
  std::vector<PolyEdge> es{
      pe("ca", "ta", "tb", {pos["ta"], pos["tb"]}),
      pe("cb", "tc", "td", {pos["tc"], {5, -2}, {11, -1}, {11.5, 1.5}, pos["td"]}),
      pe("cc", "te", "tf", {pos["te"], pos["tf"]}),
  };
  return build_from_geometry(pos, es);
}

// Single hexagon with one boundary edge drawn as a detour crossing an extra edge.
inline Drawing fx_hexagon_detour() {
  std::map<NodeId, Vec> pos;
  const char* names[6] = {"u1", "u2", "u3", "w1", "w2", "w3"};
  for (int i = 0; i < 6; ++i) pos[names[i]] = 3.0 * rim_position(i);
  pos["p"] = {1.2, -5};
  pos["q"] = {1.4, -2.2};
  std::vector<PolyEdge> es;
  for (int i = 0; i < 6; ++i) {
    NodeId a = names[i], b = names[(i + 1) % 6];
    if (std::string(a) == "w1" && std::string(b) == "w2") {
      es.push_back(pe("s3", std::min(a, b), std::max(a, b),
                      {pos["w1"], {0.2, -3.4}, {2.4, -3.3}, pos["w2"]}));
    } else {
      es.push_back(pe("s" + std::to_string(i), std::min(a, b), std::max(a, b), {pos[a], pos[b]}));
    }
    if (i < 3) {
      NodeId c = names[i], d = names[i + 3];
      es.push_back(pe("d" + std::to_string(i), std::min(c, d), std::max(c, d), {pos[c], pos[d]}));
    }
  }
  es.push_back(pe("ex", "p", "q", {pos["p"], pos["q"]}));
  return build_from_geometry(pos, es);
}

// Closed dart walk along a vertex cycle (consecutive vertices must be joined by edges).
inline std::vector<Dart> walk_of_vertices(const Drawing& d, const std::vector<NodeId>& cyc) {
  std::vector<Dart> walk;
  std::map<std::pair<NodeId, NodeId>, EdgeId> by_ends;
  for (const auto& [e, rec] : d.edges) by_ends[{rec.a, rec.b}] = e;
  for (size_t i = 0; i < cyc.size(); ++i) {
    NodeId u = cyc[i], w = cyc[(i + 1) % cyc.size()];
    EdgeId e = by_ends.at({std::min(u, w), std::max(u, w)});
    auto rt = d.routes.at(e);
    bool fwd = d.seg(rt.front()).from == u;
    if (!fwd) std::reverse(rt.begin(), rt.end());
    for (int s : rt) walk.push_back(Dart{s, fwd});
  }
  return walk;
}

}  // namespace qpr::test
