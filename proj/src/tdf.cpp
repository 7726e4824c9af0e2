#include "qpr/tdf.hpp"

#include <json.hpp>

#include "qpr/hexagons.hpp"

namespace qpr {

using json = nlohmann::ordered_json;

namespace {

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  require(it != j.end(), ErrCode::Syntax, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string need_string(const json& j, const char* what) {
  require(j.is_string(), ErrCode::Syntax, std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

Drawing parse_tdf(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const std::exception& ex) {
    fail(ErrCode::Syntax, std::string("not valid JSON: ") + ex.what());
  }
  require(doc.is_object(), ErrCode::Syntax, "document is not a JSON object");
  static const std::set<std::string> allowed = {"version",   "vertices",  "edges", "crossings",
                                                "routes",    "rotations", "outer_face", "meta"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    require(allowed.count(it.key()) != 0, ErrCode::Syntax, "unknown top-level key \"" + it.key() + "\"");
  require(need(doc, "version").is_number_integer() && need(doc, "version").get<int>() == 1,
          ErrCode::Syntax, "unsupported version");

  Drawing d;
  for (const auto& v : need(doc, "vertices")) d.add_vertex(need_string(v, "vertex id"));
  for (const auto& e : need(doc, "edges")) {
    require(e.is_object(), ErrCode::Syntax, "edge entry must be an object");
    std::string id = need_string(need(e, "id"), "edge id");
    const json& ends = need(e, "ends");
    require(ends.is_array() && ends.size() == 2, ErrCode::Syntax, "edge ends must be a pair");
    std::string a = need_string(ends[0], "endpoint"), b = need_string(ends[1], "endpoint");
    require(d.is_vertex(a) && d.is_vertex(b), ErrCode::Ref, "edge " + id + " references unknown vertex");
    require(a != b, ErrCode::Struct, "loop edge " + id);
    require(!d.edges.count(id), ErrCode::Ref, "duplicate edge id " + id);
    d.edges[id] = EdgeRec{std::min(a, b), std::max(a, b)};
  }
  for (const auto& c : need(doc, "crossings")) {
    require(c.is_object(), ErrCode::Syntax, "crossing entry must be an object");
    std::string id = need_string(need(c, "id"), "crossing id");
    const json& ee = need(c, "edges");
    require(ee.is_array() && ee.size() == 2, ErrCode::Syntax, "crossing edges must be a pair");
    std::string e1 = need_string(ee[0], "edge id"), e2 = need_string(ee[1], "edge id");
    require(d.edges.count(e1) && d.edges.count(e2), ErrCode::Ref,
            "crossing " + id + " references unknown edge");
    require(e1 != e2, ErrCode::Struct, "crossing " + id + " pairs an edge with itself");
    require(!d.has_node(id), ErrCode::Ref, "duplicate node id " + id);
    d.crossings[id] = CrossingRec{std::min(e1, e2), std::max(e1, e2), ""};
  }
  // Routes: node sequences, converted to segments.
  const json& jroutes = need(doc, "routes");
  require(jroutes.is_object(), ErrCode::Syntax, "routes must be an object");
  for (const auto& [e, rec] : d.edges) {
    auto it = jroutes.find(e);
    require(it != jroutes.end(), ErrCode::Ref, "missing route for edge " + e);
    const json& seq = *it;
    require(seq.is_array() && seq.size() >= 2, ErrCode::Syntax, "route of " + e + " too short");
    std::vector<NodeId> nodes;
    for (const auto& n : seq) nodes.push_back(need_string(n, "route node"));
    require((nodes.front() == rec.a && nodes.back() == rec.b) ||
                (nodes.front() == rec.b && nodes.back() == rec.a),
            ErrCode::Struct, "route endpoints mismatch on " + e);
    std::vector<int> chain;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
      require(d.has_node(nodes[i]) && d.has_node(nodes[i + 1]), ErrCode::Ref,
              "route of " + e + " references unknown node");
      if (i > 0)
        require(d.is_crossing(nodes[i]), ErrCode::Struct,
                "interior route node " + nodes[i] + " of " + e + " is not a crossing");
      int s = d.fresh_seg_id();
      d.segs[s] = Seg{e, nodes[i], nodes[i + 1]};
      chain.push_back(s);
    }
    d.routes[e] = chain;
  }
  for (const auto& [e, rt] : d.routes)
    require(jroutes.count(e) != 0 && !rt.empty(), ErrCode::Ref, "route missing for " + e);
  require(jroutes.size() == d.edges.size(), ErrCode::Ref, "routes listed for unknown edges");

  // Rotations: darts [edge, seg index].
  const json& jrot = need(doc, "rotations");
  require(jrot.is_object(), ErrCode::Syntax, "rotations must be an object");
  auto dart_seg = [&](const json& jd, const NodeId& n) -> int {
    require(jd.is_array() && jd.size() == 2, ErrCode::Syntax, "dart must be [edge, seg]");
    std::string e = need_string(jd[0], "dart edge");
    require(jd[1].is_number_integer(), ErrCode::Syntax, "dart segment index must be an integer");
    int k = jd[1].get<int>();
    auto it = d.routes.find(e);
    require(it != d.routes.end(), ErrCode::Ref, "dart references unknown edge " + e);
    require(k >= 0 && k < static_cast<int>(it->second.size()), ErrCode::Ref,
            "dart segment index out of range on " + e);
    int s = it->second[static_cast<size_t>(k)];
    if (!n.empty()) {
      const Seg& sg = d.seg(s);
      require(sg.from == n || sg.to == n, ErrCode::Struct,
              "dart [" + e + "," + std::to_string(k) + "] not incident to node " + n);
    }
    return s;
  };
  for (auto it = jrot.begin(); it != jrot.end(); ++it) {
    const NodeId n = it.key();
    require(d.has_node(n), ErrCode::Ref, "rotation at unknown node " + n);
    std::vector<int> rot;
    for (const auto& jd : it.value()) rot.push_back(dart_seg(jd, n));
    d.rotations[n] = rot;
  }
  for (const auto& v : d.vertices)
    if (!d.rotations.count(v)) d.rotations[v] = {};
  if (!d.segs.empty()) d.outer = Dart{dart_seg(need(doc, "outer_face"), ""), true};
  if (doc.count("meta")) {
    const json& m = doc["meta"];
    require(m.is_object(), ErrCode::Syntax, "meta must be an object");
    for (auto it = m.begin(); it != m.end(); ++it)
      d.meta[it.key()] = need_string(it.value(), "meta value");
  }
  d.validate_structure();
  require(d.euler_ok(), ErrCode::Struct, "rotation system is not plane (Euler check failed)");
  return d;
}

std::string serialize_tdf(const Drawing& d) {
  json doc;
  doc["version"] = 1;
  json jv = json::array();
  for (const auto& v : d.vertices) jv.push_back(v);
  doc["vertices"] = jv;
  json je = json::array();
  for (const auto& [e, rec] : d.edges) je.push_back(json{{"id", e}, {"ends", {rec.a, rec.b}}});
  doc["edges"] = je;
  json jc = json::array();
  for (const auto& [x, rec] : d.crossings) jc.push_back(json{{"id", x}, {"edges", {rec.e1, rec.e2}}});
  doc["crossings"] = jc;
  json jr = json::object();
  for (const auto& [e, rt] : d.routes) {
    (void)rt;
    jr[e] = d.route_nodes(e);
  }
  doc["routes"] = jr;
  auto dart_json = [&](int s, const NodeId& n) {
    const Seg& sg = d.seg(s);
    const auto& rt = d.routes.at(sg.edge);
    int idx = -1;
    for (size_t i = 0; i < rt.size(); ++i)
      if (rt[i] == s) idx = static_cast<int>(i);
    (void)n;
    return json::array({sg.edge, idx});
  };
  json jt = json::object();
  for (const auto& [n, rot] : d.rotations) {
    json arr = json::array();
    if (!rot.empty()) {
      // Deterministic start: smallest (edge, index) dart first, cyclic order kept.
      std::vector<json> ds;
      for (int s : rot) ds.push_back(dart_json(s, n));
      size_t best = 0;
      auto key = [&](const json& j) {
        return std::make_pair(j[0].get<std::string>(), j[1].get<int>());
      };
      for (size_t i = 1; i < ds.size(); ++i)
        if (key(ds[i]) < key(ds[best])) best = i;
      for (size_t i = 0; i < ds.size(); ++i) arr.push_back(ds[(best + i) % ds.size()]);
    }
    jt[n] = arr;
  }
  doc["rotations"] = jt;
  // The outer_face dart is written as a forward-traversed segment; pick one on
  // the outer face, reversing one route's stored direction if necessary.
  if (!d.segs.empty()) {
    Dart od = d.outer;
    if (!od.fwd) {
      FaceSet fs = d.trace_faces();
      for (const Dart& w : fs.face(fs.face_of(d.outer))) {
        if (w.fwd) {
          od = w;
          break;
        }
      }
    }
    if (!od.fwd) {
      Drawing tmp = d;
      tmp.reverse_route(d.seg(od.seg).edge);
      return serialize_tdf(tmp);
    }
    doc["outer_face"] = dart_json(od.seg, "");
  } else {
    doc["outer_face"] = nullptr;
  }
  json jm = json::object();
  for (const auto& [k, v] : d.meta) jm[k] = v;
  doc["meta"] = jm;
  return doc.dump(2) + "\n";
}

ValidationReport validate(const Drawing& d) {
  ValidationReport r;
  auto err = [&](const std::string& code, const std::string& msg, std::vector<std::string> ids = {}) {
    r.findings.push_back(Finding{Finding::Severity::Error, code, msg, std::move(ids)});
  };
  auto warn = [&](const std::string& code, const std::string& msg, std::vector<std::string> ids = {}) {
    r.findings.push_back(Finding{Finding::Severity::Warning, code, msg, std::move(ids)});
  };
  try {
    d.validate_structure();
  } catch (const Error& ex) {
    err("structure", ex.what());
    return r;
  }
  if (!d.euler_ok()) {
    err("euler", "rotation system is not plane");
    return r;
  }
  std::map<EdgeId, int> per_edge;
  for (const auto& [x, rec] : d.crossings) {
    (void)x;
    per_edge[rec.e1]++;
    per_edge[rec.e2]++;
  }
  r.is_2plane = true;
  for (const auto& [e, c] : per_edge) {
    if (c > 2) {
      r.is_2plane = false;
      err("not-2plane", "edge crossed more than twice", {e});
    }
  }
  r.is_simple_topological = true;
  for (const auto& pc : d.crossing_pairs()) {
    if (pc.count > 1) {
      r.is_simple_topological = false;
      warn("double-crossing", "edges cross more than once", {pc.e1, pc.e2});
    }
    if (d.adjacent_edges(pc.e1, pc.e2)) {
      r.is_simple_topological = false;
      warn("adjacent-crossing", "adjacent edges cross", {pc.e1, pc.e2});
    }
  }
  r.all_3crossings_untangled = true;
  if (r.is_2plane) {
    try {
      for (const auto& triple : find_three_crossings(d)) {
        if (classify_tangled(d, triple) == Tangledness::Tangled) {
          r.all_3crossings_untangled = false;
          warn("tangled", "tangled 3-crossing", {triple.e[0], triple.e[1], triple.e[2]});
        }
      }
    } catch (const Error& ex) {
      r.all_3crossings_untangled = false;
      warn("three-crossings", ex.what());
    }
  } else {
    r.all_3crossings_untangled = false;
  }
  return r;
}

}  // namespace qpr
