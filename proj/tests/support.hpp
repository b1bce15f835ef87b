// Shared fixtures and brute-force reference computations for the tests.
#ifndef THREADKIT_TESTS_SUPPORT_HPP
#define THREADKIT_TESTS_SUPPORT_HPP

#include "threadkit/hull.hpp"
#include "threadkit/thread3d.hpp"
#include "threadkit/threadability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace support {

using namespace threadkit;

inline Point2 pt(long x, long y) { return {Scalar(x), Scalar(y)}; }

inline Chain2 chain(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Point2> p;
  for (auto [x, y] : v) p.push_back(pt(x, y));
  return validate_chain(std::move(p));
}

inline Chain2 seg() { return chain({{0, 0}, {0, 4}}); }
inline Chain2 zig() { return chain({{0, 0}, {2, 2}, {0, 4}, {2, 6}}); }
inline Chain2 parab() { return chain({{0, 0}, {1, 1}, {2, 4}, {3, 9}}); }
inline Chain2 arc() { return chain({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }
inline Chain2 hook() { return chain({{10, 10}, {10, -10}, {0, 0}, {0, 10}, {50, 29}}); }
inline Chain2 spiral() { return chain({{0, 0}, {4, 0}, {4, 4}, {-4, 4}, {-4, -4}, {2, -4}}); }

inline Chain3 helix3() {
  std::vector<Point3> v;
  for (int i = 0; i < 12; ++i)
    v.push_back({from_double(std::cos(i * std::numbers::pi / 4)), from_double(std::sin(i * std::numbers::pi / 4)), Scalar(i)});
  return validate_chain3(std::move(v));
}

// Random integer points; nullopt when they do not form a valid chain.
inline std::optional<Chain2> random_chain(std::mt19937& rng, int n, int range) {
  std::uniform_int_distribution<int> u(-range, range);
  std::vector<Point2> p;
  for (int i = 0; i < n; ++i) p.push_back(pt(u(rng), u(rng)));
  try {
    return validate_chain(std::move(p));
  } catch (const ChainError&) {
    return std::nullopt;
  }
}

// Extreme points of a finite set by checking every candidate edge: q is a
// hull vertex iff some line through q has all other points strictly on one
// side or on the line beyond q. Returned counterclockwise from the
// lexicographically smallest vertex.
inline std::vector<Point2> brute_hull(const std::vector<Point2>& raw) {
  std::vector<Point2> pts;
  for (const auto& q : raw)
    if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(q);
  if (pts.size() <= 2) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    return pts;
  }
  // Directed edges (a, b) with every point left of or on segment ab.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      bool ok = true;
      for (std::size_t k = 0; k < pts.size() && ok; ++k) {
        if (k == i || k == j) continue;
        const int o = orient(pts[i], pts[j], pts[k]);
        if (o < 0) ok = false;
        if (o == 0) {
          // Collinear points must lie strictly between a and b.
          const Scalar t = dot(pts[k] - pts[i], pts[j] - pts[i]);
          if (sgn(t) <= 0 || t >= dot(pts[j] - pts[i], pts[j] - pts[i])) ok = false;
        }
      }
      if (ok) edges.push_back({i, j});
    }
  if (edges.empty()) {  // all collinear
    auto mm = std::minmax_element(pts.begin(), pts.end(),
                                  [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    return {*mm.first, *mm.second};
  }
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].x < pts[start].x || (pts[i].x == pts[start].x && pts[i].y < pts[start].y)) start = i;
  std::vector<Point2> out{pts[start]};
  std::size_t cur = start;
  for (std::size_t guard = 0; guard <= pts.size(); ++guard) {
    auto it = std::find_if(edges.begin(), edges.end(), [&](auto& e) { return e.first == cur; });
    if (it == edges.end() || it->second == start) break;
    cur = it->second;
    out.push_back(pts[cur]);
  }
  return out;
}

inline std::vector<Point2> hull_from(const HullPolygon& h) { return canonical_rotation(h).vertices; }

// Butterfly non-emptiness straight from the definition, with no hulls:
// n.(q - p) > 0 for every vertex before p and < 0 for every vertex after.
inline bool brute_butterfly_nonempty(const Chain2& c, const ChainParam& param) {
  const ChainParam q = canonical(param, c.size());
  const Point2 p = point_at(c, q);
  std::vector<Dir2> ws;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == p) continue;
    const bool before = i < q.edge;
    ws.push_back(before ? c[i] - p : p - c[i]);
  }
  // Feasible normals form an open arc bounded by perpendiculars of the ws;
  // midpoints between consecutive candidate boundaries hit every open arc.
  std::vector<Dir2> cand;
  for (const auto& w : ws) {
    cand.push_back(perp_ccw(w));
    cand.push_back(perp_cw(w));
  }
  std::sort(cand.begin(), cand.end(), angle_less);
  auto feasible = [&](const Dir2& n) {
    return std::all_of(ws.begin(), ws.end(), [&](const Dir2& w) { return sgn(dot(n, w)) > 0; });
  };
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const Dir2& a = cand[i];
    const Dir2& b = cand[(i + 1) % cand.size()];
    if (same_direction(a, b)) continue;
    // A direction strictly inside the counterclockwise gap from a to b.
    const Dir2 mid = sgn(cross(a, b)) > 0 ? a + b : perp_ccw(a);
    if (feasible(mid)) return true;
  }
  return false;
}

}  // namespace support

#endif
