#include "threadkit/thread3d.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <thread>

namespace threadkit {

namespace {

bool same_ray(const Dir3& a, const Dir3& b) { return is_zero(cross(a, b)) && sgn(dot(a, b)) > 0; }

// Sorts unit vectors counterclockwise around `axis`.
void sort_around(std::vector<Eigen::Vector3d>& v, const Eigen::Vector3d& axis) {
  Eigen::Vector3d a = axis.normalized();
  Eigen::Vector3d e1 = a.unitOrthogonal();
  Eigen::Vector3d e2 = a.cross(e1);
  std::sort(v.begin(), v.end(), [&](const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
    return std::atan2(x.dot(e2), x.dot(e1)) < std::atan2(y.dot(e2), y.dot(e1));
  });
}

std::size_t index_of(const Hull3& h, const Point3& p) {
  for (std::size_t i = 0; i < h.points.size(); ++i)
    if (h.points[i] == p) return i;
  throw NotAVertex("point is not among the hull's input points");
}

}  // namespace

SphericalPolygon tangent_cone_sphere(const Hull3& h, const Point3& p) {
  const std::size_t ip = index_of(h, p);
  if (!std::binary_search(h.vertices.begin(), h.vertices.end(), ip)) throw NotAVertex("point is not a hull vertex");
  SphericalPolygon poly;
  if (h.flat) {
    const auto& r = h.ring;
    const auto at = std::find(r.begin(), r.end(), ip) - r.begin();
    const std::size_t prev = r[(at + r.size() - 1) % r.size()], next = r[(at + 1) % r.size()];
    const Dir3 m = face_normal(h, 0);
    poly.kind = RegionKind::Lune;
    poly.nodes = {to_vec(cross(p - h.points[prev], m)).normalized(), to_vec(cross(h.points[next] - p, m)).normalized()};
    return poly;
  }
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();
  std::vector<Dir3> seen;  // one node per facet, not per triangle
  for (std::size_t f = 0; f < h.faces.size(); ++f) {
    const auto& face = h.faces[f];
    if (std::find(face.begin(), face.end(), ip) == face.end()) continue;
    const Dir3 n = face_normal(h, f);
    if (std::any_of(seen.begin(), seen.end(), [&](const Dir3& s) { return is_zero(cross(s, n)) && sgn(dot(s, n)) > 0; }))
      continue;
    seen.push_back(n);
    poly.nodes.push_back(h.normals[f]);
    axis += h.normals[f];
  }
  sort_around(poly.nodes, axis);
  return poly;
}

// ---------------------------------------------------------------------------

std::optional<Butterfly3> feasible_region(std::vector<Dir3> cs) {
  cs.erase(std::remove_if(cs.begin(), cs.end(), [](const Dir3& c) { return is_zero(c); }), cs.end());
  Butterfly3 out;
  out.constraints = cs;
  if (cs.empty()) throw std::invalid_argument("no constraints");

  auto strictly_ok = [&](const Dir3& n) {
    return std::all_of(cs.begin(), cs.end(), [&](const Dir3& c) { return sgn(dot(n, c)) > 0; });
  };

  const Dir3& c0 = cs[0];
  std::optional<Dir3> m;  // normal of the plane spanned so far
  for (const auto& c : cs)
    if (!is_zero(cross(c0, c))) {
      m = cross(c0, c);
      break;
    }

  if (!m) {
    if (!strictly_ok(c0)) return std::nullopt;
    out.region.kind = RegionKind::Hemisphere;
    out.region.nodes = {to_vec(c0).normalized()};
    out.interior = c0;
    return out;
  }

  const bool planar = std::all_of(cs.begin(), cs.end(), [&](const Dir3& c) { return sgn(dot(*m, c)) == 0; });
  if (planar) {
    // In-plane orthogonal basis; n = a e1 + b e2 turns n.c into an exact 2D dot product.
    const Dir3 e1 = c0, e2 = cross(*m, c0);
    std::vector<Dir2> flat;
    flat.reserve(cs.size());
    for (const auto& c : cs) flat.push_back({dot(e1, c), dot(e2, c)});
    const auto arc = feasible_normals(flat);
    if (!arc) return std::nullopt;
    auto lift2 = [&](const Dir2& d) { return d.dx * e1 + d.dy * e2; };
    const Dir2 mid = sgn(cross(arc->lo, arc->hi)) == 0 ? perp_ccw(arc->lo) : arc->lo + arc->hi;
    out.region.kind = RegionKind::Lune;
    out.region.nodes = {to_vec(lift2(arc->lo)).normalized(), to_vec(lift2(arc->hi)).normalized()};
    out.interior = lift2(mid);
    return out;
  }

  // Pointed cone: its extreme rays are cross products of constraint pairs.
  std::vector<Dir3> rays;
  for (std::size_t j = 0; j < cs.size(); ++j)
    for (std::size_t k = j + 1; k < cs.size(); ++k) {
      const Dir3 r = cross(cs[j], cs[k]);
      if (is_zero(r)) continue;
      for (const Dir3& cand : {r, -r}) {
        if (!std::all_of(cs.begin(), cs.end(), [&](const Dir3& c) { return sgn(dot(cand, c)) >= 0; })) continue;
        if (std::none_of(rays.begin(), rays.end(), [&](const Dir3& x) { return same_ray(x, cand); }))
          rays.push_back(cand);
      }
    }
  if (rays.empty()) return std::nullopt;
  Dir3 sum{Scalar(0), Scalar(0), Scalar(0)};
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();
  for (const auto& r : rays) {
    sum = sum + r;
    out.region.nodes.push_back(to_vec(r).normalized());
    axis += out.region.nodes.back();
  }
  if (!strictly_ok(sum)) return std::nullopt;
  sort_around(out.region.nodes, axis);
  out.region.kind = RegionKind::Polygon;
  out.interior = sum;
  return out;
}

namespace {

// Generators of the cone spanned by q - p over `side`. nullopt when that
// cone contains a line, so no plane through p can keep the side strictly on one side.
std::optional<std::vector<Dir3>> side_generators(const std::vector<Point3>& side, const Point3& p) {
  std::vector<Dir3> ws;
  for (const auto& q : side)
    if (!(q == p)) ws.push_back(q - p);
  if (ws.empty()) return std::vector<Dir3>{};

  const Dir3& w0 = ws[0];
  std::optional<Dir3> m;
  for (const auto& w : ws)
    if (!is_zero(cross(w0, w))) {
      m = cross(w0, w);
      break;
    }
  if (!m) {
    for (const auto& w : ws)
      if (sgn(dot(w, w0)) < 0) return std::nullopt;
    return std::vector<Dir3>{w0};
  }
  const bool planar = std::all_of(ws.begin(), ws.end(), [&](const Dir3& w) { return sgn(dot(*m, w)) == 0; });
  if (planar) {
    // Angular extremes inside an open half-plane of the span.
    const Dir3 e1 = w0, e2 = cross(*m, w0);
    std::vector<Dir2> flat;
    for (const auto& w : ws) flat.push_back({dot(e1, w), dot(e2, w)});
    const auto arc = feasible_normals(flat);
    if (!arc) return std::nullopt;
    std::size_t lo = 0, hi = 0;
    for (std::size_t k = 1; k < flat.size(); ++k) {
      if (sgn(cross(flat[k], flat[lo])) > 0) lo = k;
      if (sgn(cross(flat[hi], flat[k])) > 0) hi = k;
    }
    if (lo == hi) return std::vector<Dir3>{ws[lo]};
    return std::vector<Dir3>{ws[lo], ws[hi]};
  }

  const Hull3 h = hull3(side);
  std::size_t ip = side.size();
  for (std::size_t i = 0; i < side.size(); ++i)
    if (side[i] == p) ip = i;
  if (!std::binary_search(h.vertices.begin(), h.vertices.end(), ip)) return std::nullopt;
  std::set<std::size_t> link;
  for (const auto& f : h.faces)
    if (std::find(f.begin(), f.end(), ip) != f.end())
      for (auto k : f)
        if (k != ip) link.insert(k);
  std::vector<Dir3> gens;
  for (auto k : link) gens.push_back(side[k] - p);
  return gens;
}

}  // namespace

std::optional<Butterfly3> butterfly3_at(const Chain3& c, const ChainParam& param) {
  const ChainParam q = canonical(param, c.size());
  const Point3 p = point_at(c, q);
  const auto all = c.vertices();
  std::vector<Point3> before(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(q.edge));
  std::vector<Point3> after(all.begin() + static_cast<std::ptrdiff_t>(q.edge), all.end());
  const auto vertex = vertex_at(q);
  if (!vertex || *vertex == c.size() - 1) before.push_back(p);
  if (!vertex || *vertex == q.edge - 1) after.insert(after.begin(), p);

  const auto upper = side_generators(before, p);
  const auto lower = side_generators(after, p);
  if (!upper || !lower) return std::nullopt;
  std::vector<Dir3> cs = *lower;
  for (const auto& g : *upper) cs.push_back(-g);
  return feasible_region(std::move(cs));
}

Verdict3 decide3_sampled(const Chain3& c, int samples_per_edge) {
  if (samples_per_edge < 1) throw std::invalid_argument("samples_per_edge must be at least 1");
  std::vector<ChainParam> params;
  for (std::size_t e = 1; e < c.size(); ++e)
    for (int k = 0; k < samples_per_edge; ++k) params.push_back({e, Scalar(k) / samples_per_edge});
  params.push_back(vertex_param(c.size() - 1, c.size()));

  std::vector<char> ok(params.size(), 1);
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  const std::size_t chunk = (params.size() + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::size_t start = 0; start < params.size(); start += chunk) {
    jobs.push_back(std::async(std::launch::async, [&, start] {
      for (std::size_t k = start; k < std::min(params.size(), start + chunk); ++k)
        ok[k] = butterfly3_at(c, params[k]).has_value();
    }));
  }
  for (auto& j : jobs) j.get();

  Verdict3 v;
  v.checked_params = params.size();
  for (std::size_t k = 0; k < params.size(); ++k)
    if (!ok[k]) {
      v.threadable_at_samples = false;
      v.witness = params[k];
      break;
    }
  return v;
}

Eigen::Vector3d separating_plane_at(const Chain3& c, const ChainParam& p) {
  const auto bf = butterfly3_at(c, p);
  if (!bf) throw EmptyButterfly("no separating plane at " + format_param(p));
  if (bf->region.kind == RegionKind::Polygon) {
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& n : bf->region.nodes) centroid += n;
    centroid.normalize();
    const Dir3 exact{from_double(centroid.x()), from_double(centroid.y()), from_double(centroid.z())};
    if (std::all_of(bf->constraints.begin(), bf->constraints.end(),
                    [&](const Dir3& k) { return sgn(dot(exact, k)) > 0; }))
      return centroid;
  }
  return to_vec(bf->interior).normalized();
}

}  // namespace threadkit
