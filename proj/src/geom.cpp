#include "qpr/geom.hpp"

#include <algorithm>
#include <cmath>

namespace qpr {

namespace {
constexpr double kEps = 1e-9;
}

bool proper_intersect(Vec a, Vec b, Vec c, Vec d, Vec* out, double* t_ab, double* t_cd) {
  Vec r = b - a, s = d - c;
  double denom = cross(r, s);
  if (std::abs(denom) < kEps) return false;
  double t = cross(c - a, s) / denom;
  double u = cross(c - a, r) / denom;
  if (t <= kEps || t >= 1 - kEps || u <= kEps || u >= 1 - kEps) return false;
  if (out) *out = a + t * r;
  if (t_ab) *t_ab = t;
  if (t_cd) *t_cd = u;
  return true;
}

namespace {

struct Hit {
  double t = 0;       // global parameter along the polyline
  NodeId node;        // crossing id
  Vec at;
};

// Direction of the polyline at global parameter t, oriented forward.
Vec dir_at(const std::vector<Vec>& pts, double t) {
  int k = std::min(static_cast<int>(t), static_cast<int>(pts.size()) - 2);
  Vec d = pts[static_cast<size_t>(k) + 1] - pts[static_cast<size_t>(k)];
  double len = std::sqrt(dot(d, d));
  require(len > kEps, ErrCode::Internal, "degenerate polyline piece");
  return {d.x / len, d.y / len};
}

}  // namespace

Drawing build_from_geometry(const std::map<NodeId, Vec>& pos, std::vector<PolyEdge> edges) {
  std::sort(edges.begin(), edges.end(), [](const PolyEdge& a, const PolyEdge& b) { return a.id < b.id; });
  Drawing d;
  for (const auto& [v, p] : pos) {
    (void)p;
    d.add_vertex(v);
  }
  for (const auto& e : edges) {
    require(pos.count(e.a) && pos.count(e.b), ErrCode::Ref, "polyline endpoint missing: " + e.id);
    require(e.pts.size() >= 2, ErrCode::Internal, "polyline too short: " + e.id);
    d.add_abstract_edge(e.id, e.a, e.b);
  }
  // Distinct node positions.
  {
    std::vector<std::pair<NodeId, Vec>> ps(pos.begin(), pos.end());
    for (size_t i = 0; i < ps.size(); ++i)
      for (size_t j = i + 1; j < ps.size(); ++j)
        require(std::abs(ps[i].second.x - ps[j].second.x) > kEps ||
                    std::abs(ps[i].second.y - ps[j].second.y) > kEps,
                ErrCode::Internal, "coincident vertices " + ps[i].first + "," + ps[j].first);
  }
  // No vertex may sit on a foreign edge.
  for (const auto& e : edges) {
    for (const auto& [v, p] : pos) {
      if (v == e.a || v == e.b) continue;
      for (size_t k = 0; k + 1 < e.pts.size(); ++k) {
        Vec u = e.pts[k + 1] - e.pts[k];
        Vec w = p - e.pts[k];
        double len2 = dot(u, u);
        double t = std::clamp(dot(w, u) / len2, 0.0, 1.0);
        Vec nearest = e.pts[k] + t * u;
        Vec diff = p - nearest;
        require(dot(diff, diff) > kEps, ErrCode::Internal,
                "vertex " + v + " lies on edge " + e.id);
      }
    }
  }
  // All pairwise proper intersections.
  std::map<EdgeId, std::vector<Hit>> hits;
  std::map<NodeId, Vec> xpos;
  for (size_t i = 0; i < edges.size(); ++i) {
    for (size_t j = i + 1; j < edges.size(); ++j) {
      const PolyEdge& A = edges[i];
      const PolyEdge& B = edges[j];
      std::vector<std::tuple<double, double, Vec>> found;
      for (size_t p = 0; p + 1 < A.pts.size(); ++p) {
        for (size_t q = 0; q + 1 < B.pts.size(); ++q) {
          Vec at;
          double ta, tb;
          if (proper_intersect(A.pts[p], A.pts[p + 1], B.pts[q], B.pts[q + 1], &at, &ta, &tb))
            found.emplace_back(static_cast<double>(p) + ta, static_cast<double>(q) + tb, at);
        }
      }
      std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return std::get<0>(a) < std::get<0>(b);
      });
      bool adjacent = A.a == B.a || A.a == B.b || A.b == B.a || A.b == B.b;
      require(found.empty() || !adjacent, ErrCode::Internal,
              "adjacent edges intersect in fixture: " + A.id + "," + B.id);
      for (const auto& [ta, tb, at] : found) {
        NodeId x = d.fresh_crossing_id();
        d.crossings[x] = CrossingRec{std::min(A.id, B.id), std::max(A.id, B.id), ""};
        hits[A.id].push_back(Hit{ta, x, at});
        hits[B.id].push_back(Hit{tb, x, at});
        xpos[x] = at;
      }
    }
  }
  // Routes and segments; remember directions at both ends of each segment.
  std::map<int, std::pair<Vec, Vec>> seg_dirs;  // seg -> (dir away from `from`, dir away from `to`)
  for (const auto& e : edges) {
    auto& hs = hits[e.id];
    std::sort(hs.begin(), hs.end(), [](const Hit& a, const Hit& b) { return a.t < b.t; });
    for (size_t i = 0; i + 1 < hs.size(); ++i)
      require(hs[i + 1].t - hs[i].t > kEps, ErrCode::Internal, "crossings too close on " + e.id);
    std::vector<std::pair<NodeId, double>> stations;
    stations.emplace_back(e.a, 0.0);
    for (const Hit& h : hs) stations.emplace_back(h.node, h.t);
    stations.emplace_back(e.b, static_cast<double>(e.pts.size()) - 1.0);
    std::vector<int> chain;
    for (size_t i = 0; i + 1 < stations.size(); ++i) {
      int s = d.fresh_seg_id();
      d.segs[s] = Seg{e.id, stations[i].first, stations[i + 1].first};
      Vec fwd_from = dir_at(e.pts, stations[i].second);
      Vec fwd_to = dir_at(e.pts, stations[i + 1].second);
      seg_dirs[s] = {fwd_from, {-fwd_to.x, -fwd_to.y}};
      chain.push_back(s);
    }
    d.routes[e.id] = chain;
  }
  // Rotations: sort darts counterclockwise by angle.
  std::map<NodeId, std::vector<std::pair<double, int>>> ang;
  for (const auto& [sid, s] : d.segs) {
    const auto& [df, dt] = seg_dirs.at(sid);
    ang[s.from].emplace_back(std::atan2(df.y, df.x), sid);
    ang[s.to].emplace_back(std::atan2(dt.y, dt.x), sid);
  }
  for (auto& [n, list] : ang) {
    std::sort(list.begin(), list.end());
    for (size_t i = 0; i + 1 < list.size(); ++i)
      require(list[i + 1].first - list[i].first > 1e-7, ErrCode::Internal,
              "darts angularly coincident at " + n);
    std::vector<int> rot;
    for (const auto& [a, sid] : list) {
      (void)a;
      rot.push_back(sid);
    }
    d.rotations[n] = rot;
  }
  for (const auto& v : d.vertices)
    if (!d.rotations.count(v)) d.rotations[v] = {};
  // Outer face: at the bottom-most node the downward corner is unbounded.
  if (!d.segs.empty()) {
    NodeId low;
    Vec lp{0, 0};
    bool first = true;
    auto consider = [&](const NodeId& n, Vec p) {
      if (d.degree(n) == 0) return;
      if (first || p.y < lp.y - kEps || (std::abs(p.y - lp.y) <= kEps && p.x < lp.x)) {
        low = n;
        lp = p;
        first = false;
      }
    };
    for (const auto& [v, p] : pos) consider(v, p);
    for (const auto& [x, p] : xpos) consider(x, p);
    const auto& list = ang.at(low);
    // Find the angular gap containing -pi/2 (straight down).
    double target = -1.5707963267948966;
    size_t j = 0;
    bool found = false;
    for (size_t i = 0; i < list.size(); ++i) {
      double a0 = list[i].first;
      double a1 = list[(i + 1) % list.size()].first;
      bool inside = i + 1 < list.size() ? (target > a0 && target < a1)
                                        : (target > a0 || target < a1);
      if (inside) {
        j = (i + 1) % list.size();
        found = true;
        break;
      }
    }
    require(found, ErrCode::Internal, "no downward gap at bottom-most node");
    d.outer = d.dart_at(low, list[j].second);
  }
  return d;
}

Vec rim_position(int i) {
  static const double jitter[6] = {2.8, -2.1, 3.5, -4.2, 1.4, -3.5};
  double deg = 90.0 + 60.0 * i + jitter[i % 6];
  double rad = deg * 3.14159265358979323846 / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

void graft_chords(Drawing& host, const std::vector<NodeId>& rim,
                  const std::map<NodeId, Corner>& attach, const std::vector<ChordSpec>& chords) {
  require(rim.size() == 6, ErrCode::Internal, "graft expects six rim corners");
  std::map<NodeId, Vec> pos;
  for (int i = 0; i < 6; ++i) pos[rim[static_cast<size_t>(i)]] = rim_position(i);
  std::vector<PolyEdge> pedges;
  for (const auto& c : chords) {
    require(host.routes.count(c.id) && host.routes.at(c.id).empty(), ErrCode::Internal,
            "graft chord already drawn: " + c.id);
    PolyEdge pe;
    pe.id = c.id;
    pe.a = c.a;
    pe.b = c.b;
    pe.pts.push_back(pos.at(c.a));
    for (const Vec& m : c.mid) pe.pts.push_back(m);
    pe.pts.push_back(pos.at(c.b));
    pedges.push_back(pe);
  }
  Drawing mini = build_from_geometry(pos, pedges);
  // Transplant the mini arrangement into the host.
  std::map<NodeId, NodeId> xmap;
  for (const auto& [x, rec] : mini.crossings) {
    NodeId nx = host.fresh_crossing_id();
    host.crossings[nx] = rec;
    xmap[x] = nx;
  }
  auto mapn = [&](const NodeId& n) {
    auto it = xmap.find(n);
    return it == xmap.end() ? n : it->second;
  };
  std::map<int, int> smap;
  for (const auto& [sid, s] : mini.segs) {
    int ns = host.fresh_seg_id();
    host.segs[ns] = Seg{s.edge, mapn(s.from), mapn(s.to)};
    smap[sid] = ns;
  }
  for (const auto& c : chords) {
    std::vector<int> chain;
    for (int s : mini.routes.at(c.id)) chain.push_back(smap.at(s));
    host.routes.at(c.id) = chain;
  }
  for (const auto& [x, rec] : mini.crossings) {
    (void)rec;
    std::vector<int> rot;
    for (int s : mini.rotations.at(x)) rot.push_back(smap.at(s));
    host.rotations[xmap.at(x)] = rot;
  }
  for (const NodeId& r : rim) {
    const auto& rot = mini.rotations.at(r);
    if (rot.empty()) continue;
    require(rot.size() == 1, ErrCode::Internal, "rim corner with several chord ends: " + r);
    const Corner& c = attach.at(r);
    require(c.node == r, ErrCode::Internal, "attach corner mismatch at " + r);
    host.insert_rotation_after(r, smap.at(rot.front()), c.after_seg);
  }
  if (host.outer.seg == -1 && !host.segs.empty()) host.outer = Dart{host.segs.begin()->first, true};
}

}  // namespace qpr
