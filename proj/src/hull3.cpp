#include "threadkit/hull3.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace threadkit {

int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  return sgn(dot(cross(b - a, c - a), d - a));
}

namespace {

// Coordinates kept after dropping `axis`.
Point2 drop(const Point3& p, int axis) {
  switch (axis) {
    case 0:
      return {p.y, p.z};
    case 1:
      return {p.z, p.x};
    default:
      return {p.x, p.y};
  }
}

int axis_for_normal(const Dir3& n) {
  if (sgn(n.dz) != 0) return 2;
  if (sgn(n.dx) != 0) return 0;
  return 1;
}

bool segments_intersect3(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  if (orient3d(a, b, c, d) != 0) return false;
  Dir3 n = cross(b - a, c - a);
  if (is_zero(n)) n = cross(b - a, d - a);
  if (is_zero(n)) {
    // All four collinear: any plane containing the line works.
    const Dir3 u = b - a;
    n = sgn(u.dx) != 0 || sgn(u.dy) != 0 ? Dir3{Scalar(0), Scalar(0), Scalar(1)} : Dir3{Scalar(1), Scalar(0), Scalar(0)};
  }
  const int axis = axis_for_normal(n);
  return segments_intersect(drop(a, axis), drop(b, axis), drop(c, axis), drop(d, axis));
}

bool parallel(const Dir3& a, const Dir3& b) { return is_zero(cross(a, b)); }

}  // namespace

Chain3 validate_chain3(std::vector<Point3> raw) {
  if (raw.size() < 2) throw ChainError(ChainErrorKind::TooShort, 0, 0, "chain needs at least 2 vertices");
  for (std::size_t i = 1; i < raw.size(); ++i)
    if (raw[i] == raw[i - 1])
      throw ChainError(ChainErrorKind::DuplicateVertex, i, i, "vertex " + std::to_string(i) + " repeats its predecessor");

  std::vector<Point3> v;
  v.reserve(raw.size());
  for (auto& q : raw) {
    while (v.size() >= 2) {
      const Dir3 e1 = v.back() - v[v.size() - 2];
      const Dir3 e2 = q - v.back();
      if (parallel(e1, e2) && sgn(dot(e1, e2)) > 0)
        v.pop_back();
      else
        break;
    }
    v.push_back(std::move(q));
  }

  const std::size_t edges = v.size() - 1;
  for (std::size_t i = 1; i <= edges; ++i) {
    for (std::size_t j = i + 1; j <= edges; ++j) {
      bool hit;
      if (j == i + 1) {
        const Dir3 e1 = v[i] - v[i - 1], e2 = v[j] - v[j - 1];
        hit = parallel(e1, e2) && sgn(dot(e1, e2)) < 0;
      } else {
        hit = segments_intersect3(v[i - 1], v[i], v[j - 1], v[j]);
      }
      if (hit)
        throw ChainError(ChainErrorKind::SelfIntersection, i, j,
                         "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
  }
  return Chain3(std::move(v));
}

Chain3 lift(const Chain2& c) {
  std::vector<Point3> v;
  v.reserve(c.size());
  for (const auto& p : c.vertices()) v.push_back({p.x, p.y, Scalar(0)});
  return validate_chain3(std::move(v));
}

Point3 point_at(const Chain3& c, const ChainParam& p) {
  if (p.edge < 1 || p.edge > c.edge_count() || sgn(p.t) < 0 || p.t > 1)
    throw OutOfRange("param " + format_param(p) + " outside chain");
  const Point3& a = c[p.edge - 1];
  return a + p.t * (c[p.edge] - a);
}

// ---------------------------------------------------------------------------

Dir3 face_normal(const Hull3& h, std::size_t f) {
  const auto& [a, b, c] = h.faces[f];
  return cross(h.points[b] - h.points[a], h.points[c] - h.points[a]);
}

namespace {

void finish(Hull3& h) {
  std::set<std::size_t> used;
  for (const auto& f : h.faces) used.insert(f.begin(), f.end());
  h.vertices.assign(used.begin(), used.end());
  h.normals.clear();
  for (std::size_t f = 0; f < h.faces.size(); ++f) h.normals.push_back(to_vec(face_normal(h, f)).normalized());
}

// Convex polygon of coplanar points, counterclockwise seen from the side `n` points to.
std::vector<std::size_t> planar_hull(std::span<const Point3> pts, const Dir3& n) {
  const int axis = axis_for_normal(n);
  const int s = sgn(axis == 0 ? n.dx : axis == 1 ? n.dy : n.dz);
  std::vector<Point2> q;
  q.reserve(pts.size());
  for (const auto& p : pts) q.push_back(drop(p, axis));
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return q[a].x < q[b].x || (q[a].x == q[b].x && q[a].y < q[b].y);
  });
  order.erase(std::unique(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q[a] == q[b]; }),
              order.end());
  // Andrew's monotone chain, strict turns only.
  std::vector<std::size_t> out(2 * order.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    while (k >= 2 && orient(q[out[k - 2]], q[out[k - 1]], q[order[i]]) <= 0) --k;
    out[k++] = order[i];
  }
  for (std::size_t i = order.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(q[out[k - 2]], q[out[k - 1]], q[order[i]]) <= 0) --k;
    out[k++] = order[i];
  }
  out.resize(k - 1);
  if (s < 0) std::reverse(out.begin(), out.end());
  return out;
}

// Coplanar faces are regrouped into facets and each facet is re-triangulated
// as a fan over its strictly convex corners, so points lying on a face or an
// edge drop out of the hull.
void merge_facets(Hull3& h) {
  std::vector<Dir3> normals;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t f = 0; f < h.faces.size(); ++f) {
    const Dir3 n = face_normal(h, f);
    std::size_t g = 0;
    while (g < normals.size() && !(is_zero(cross(normals[g], n)) && sgn(dot(normals[g], n)) > 0)) ++g;
    if (g == normals.size()) {
      normals.push_back(n);
      members.emplace_back();
    }
    for (std::size_t v : h.faces[f]) members[g].push_back(v);
  }
  std::vector<std::array<std::size_t, 3>> faces;
  for (std::size_t g = 0; g < normals.size(); ++g) {
    auto& idx = members[g];
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::vector<Point3> pts;
    for (std::size_t i : idx) pts.push_back(h.points[i]);
    const auto ring = planar_hull(pts, normals[g]);
    for (std::size_t k = 1; k + 1 < ring.size(); ++k) faces.push_back({idx[ring[0]], idx[ring[k]], idx[ring[k + 1]]});
  }
  h.faces = std::move(faces);
}

}  // namespace

Hull3 hull3(std::span<const Point3> points) {
  Hull3 h;
  h.points.assign(points.begin(), points.end());
  const auto& p = h.points;
  const std::size_t n = p.size();
  if (n < 3) throw Degenerate("hull needs at least 3 points");

  std::size_t i1 = 1;
  while (i1 < n && p[i1] == p[0]) ++i1;
  std::size_t i2 = i1 + 1;
  while (i2 < n && is_zero(cross(p[i1] - p[0], p[i2] - p[0]))) ++i2;
  if (i1 >= n || i2 >= n) throw Degenerate("points are collinear");
  std::size_t i3 = i2 + 1;
  while (i3 < n && orient3d(p[0], p[i1], p[i2], p[i3]) == 0) ++i3;

  if (i3 >= n) {
    const Dir3 m = cross(p[i1] - p[0], p[i2] - p[0]);
    const auto ring = planar_hull(p, m);
    h.flat = true;
    h.ring = ring;
    for (std::size_t k = 1; k + 1 < ring.size(); ++k) {
      h.faces.push_back({ring[0], ring[k], ring[k + 1]});
      h.faces.push_back({ring[0], ring[k + 1], ring[k]});
    }
    finish(h);
    return h;
  }

  const std::array<std::size_t, 4> tet{0, i1, i2, i3};
  for (int skip = 0; skip < 4; ++skip) {
    std::array<std::size_t, 3> f;
    int k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != skip) f[k++] = tet[j];
    if (orient3d(p[f[0]], p[f[1]], p[f[2]], p[tet[skip]]) > 0) std::swap(f[1], f[2]);
    h.faces.push_back(f);
  }

  for (std::size_t q = 1; q < n; ++q) {
    if (q == i1 || q == i2 || q == i3) continue;
    std::vector<bool> visible(h.faces.size());
    bool any = false;
    for (std::size_t f = 0; f < h.faces.size(); ++f) {
      const auto& [a, b, c] = h.faces[f];
      visible[f] = orient3d(p[a], p[b], p[c], p[q]) > 0;
      any = any || visible[f];
    }
    if (!any) continue;
    std::set<std::pair<std::size_t, std::size_t>> lit;
    for (std::size_t f = 0; f < h.faces.size(); ++f)
      if (visible[f])
        for (int e = 0; e < 3; ++e) lit.insert({h.faces[f][e], h.faces[f][(e + 1) % 3]});
    std::vector<std::array<std::size_t, 3>> kept;
    for (std::size_t f = 0; f < h.faces.size(); ++f)
      if (!visible[f]) kept.push_back(h.faces[f]);
    for (const auto& [u, v] : lit)
      if (!lit.count({v, u})) kept.push_back({u, v, q});
    h.faces = std::move(kept);
  }
  merge_facets(h);
  finish(h);
  return h;
}

}  // namespace threadkit
