#include "threadkit/geom.hpp"

#include <algorithm>
#include <cmath>

namespace threadkit {

namespace {

// Doubles inside this range multiply without overflow or underflow.
bool filterable(double v) { return v == 0 || (std::abs(v) > 1e-140 && std::abs(v) < 1e140); }

// mpq_get_d truncates, so each conversion is off by less than one ulp; the
// products and the final sum add a few more. 1e-13 leaves a wide margin.
constexpr double kFilterBound = 1e-13;

// Sign of a*b + s*c*d with s = +1 or -1, exact.
int product_sum_sign(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d, int s) {
  bool ok = true;
  auto conv = [&](const Scalar& v) {
    const double r = v.get_d();
    ok = ok && filterable(r) && (r != 0 || sgn(v) == 0);
    return r;
  };
  const double da = conv(a), db = conv(b), dc = conv(c), dd = conv(d);
  if (ok) {
    const double x = da * db, y = s * dc * dd;
    const double sum = x + y, bound = kFilterBound * (std::abs(x) + std::abs(y));
    if (sum > bound) return 1;
    if (sum < -bound) return -1;
    if (x == 0 && y == 0) return 0;
  }
  // Denominators are positive: compare numerators over the common denominator.
  const mpz_class lhs = a.get_num() * b.get_num() * c.get_den() * d.get_den();
  const mpz_class rhs = c.get_num() * d.get_num() * a.get_den() * b.get_den();
  return s > 0 ? sgn(lhs + rhs) : sgn(lhs - rhs);
}

}  // namespace

int cross_sign(const Dir2& a, const Dir2& b) { return product_sum_sign(a.dx, b.dy, a.dy, b.dx, -1); }

int dot_sign(const Dir2& a, const Dir2& b) { return product_sum_sign(a.dx, b.dx, a.dy, b.dy, 1); }

int orient(const Point2& a, const Point2& b, const Point2& c) {
  bool ok = true;
  auto conv = [&](const Scalar& v) {
    const double d = v.get_d();
    ok = ok && filterable(d) && (d != 0 || sgn(v) == 0);
    return d;
  };
  const double ax = conv(a.x), ay = conv(a.y), bx = conv(b.x), by = conv(b.y), cx = conv(c.x), cy = conv(c.y);
  if (ok) {
    const double l = (bx - ax) * (cy - ay), r = (by - ay) * (cx - ax);
    const double mag = (std::abs(bx) + std::abs(ax)) * (std::abs(cy) + std::abs(ay)) +
                       (std::abs(by) + std::abs(ay)) * (std::abs(cx) + std::abs(ax));
    const double det = l - r, bound = kFilterBound * mag;
    if (det > bound) return 1;
    if (det < -bound) return -1;
  }
  return cross_sign(b - a, c - a);
}

bool same_direction(const Dir2& a, const Dir2& b) {
  return cross_sign(a, b) == 0 && dot_sign(a, b) > 0;
}

namespace {

// 0 for angles in [0, pi), 1 for [pi, 2pi).
int half_of(const Dir2& d) {
  int sy = sgn(d.dy);
  return (sy < 0 || (sy == 0 && sgn(d.dx) < 0)) ? 1 : 0;
}

bool on_segment(const Point2& a, const Point2& b, const Point2& c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
         c.y <= std::max(a.y, b.y);
}

}  // namespace

bool angle_less(const Dir2& a, const Dir2& b) {
  int ha = half_of(a), hb = half_of(b);
  if (ha != hb) return ha < hb;
  return cross_sign(a, b) > 0;
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

std::vector<Point2> merge_collinear_runs(std::vector<Point2> raw) {
  std::vector<Point2> out;
  out.reserve(raw.size());
  for (auto& q : raw) {
    while (out.size() >= 2) {
      const Point2& a = out[out.size() - 2];
      const Point2& b = out.back();
      if (orient(a, b, q) == 0 && dot_sign(b - a, q - b) > 0)
        out.pop_back();
      else
        break;
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::optional<Dir2> monotone_direction(std::span<const Point2> vertices) {
  if (vertices.size() < 2) return std::nullopt;
  std::vector<Dir2> edges;
  edges.reserve(vertices.size() - 1);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    edges.push_back(vertices[i] - vertices[i - 1]);
    if (is_zero(edges.back())) return std::nullopt;
  }
  auto arc = feasible_normals(edges);
  if (!arc) return std::nullopt;
  if (cross_sign(arc->lo, arc->hi) == 0) return perp_ccw(arc->lo);
  return arc->lo + arc->hi;
}

Chain2 validate_chain(std::vector<Point2> raw) {
  if (raw.size() < 2) throw ChainError(ChainErrorKind::TooShort, 0, 0, "chain needs at least 2 vertices");
  for (std::size_t i = 1; i < raw.size(); ++i)
    if (raw[i] == raw[i - 1])
      throw ChainError(ChainErrorKind::DuplicateVertex, i, i,
                       "vertex " + std::to_string(i) + " repeats its predecessor");

  std::vector<Point2> v = merge_collinear_runs(std::move(raw));

  if (!monotone_direction(v)) {
    const std::size_t edges = v.size() - 1;
    for (std::size_t i = 1; i <= edges; ++i) {
      const Point2& a = v[i - 1];
      const Point2& b = v[i];
      for (std::size_t j = i + 1; j <= edges; ++j) {
        const Point2& c = v[j - 1];
        const Point2& d = v[j];
        bool hit;
        if (j == i + 1)
          hit = orient(a, b, d) == 0 && dot_sign(b - a, d - c) < 0;  // back-tracking overlap
        else
          hit = segments_intersect(a, b, c, d);
        if (hit)
          throw ChainError(ChainErrorKind::SelfIntersection, i, j,
                           "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  return Chain2(std::move(v));
}

Chain2 Chain2::reversed() const {
  std::vector<Point2> v(vertices_.rbegin(), vertices_.rend());
  return Chain2(std::move(v));
}

// ---------------------------------------------------------------------------

ChainParam canonical(const ChainParam& p, std::size_t vertex_count) {
  if (vertex_count < 2 || p.edge < 1 || p.edge > vertex_count - 1 || sgn(p.t) < 0 || p.t > 1)
    throw OutOfRange("param " + format_param(p) + " outside chain");
  if (p.t == 1 && p.edge < vertex_count - 1) return {p.edge + 1, Scalar(0)};
  return p;
}

ChainParam vertex_param(std::size_t vertex, std::size_t vertex_count) {
  if (vertex >= vertex_count) throw OutOfRange("vertex index outside chain");
  if (vertex == vertex_count - 1) return {vertex_count - 1, Scalar(1)};
  return {vertex + 1, Scalar(0)};
}

std::optional<std::size_t> vertex_at(const ChainParam& p) {
  if (sgn(p.t) == 0) return p.edge - 1;
  if (p.t == 1) return p.edge;
  return std::nullopt;
}

Scalar param_position(const ChainParam& p) { return Scalar(static_cast<unsigned long>(p.edge - 1)) + p.t; }

bool param_less(const ChainParam& a, const ChainParam& b) { return param_position(a) < param_position(b); }

bool param_equal(const ChainParam& a, const ChainParam& b) {
  return param_position(a) == param_position(b);
}

ChainParam reverse_param(const ChainParam& p, std::size_t vertex_count) {
  return canonical({vertex_count - p.edge, Scalar(1 - p.t)}, vertex_count);
}

std::string format_param(const ChainParam& p) {
  return "edge " + std::to_string(p.edge) + ", t=" + format_scalar(p.t);
}

Point2 point_at(const Chain2& c, const ChainParam& p) {
  if (p.edge < 1 || p.edge > c.edge_count() || sgn(p.t) < 0 || p.t > 1)
    throw OutOfRange("param " + format_param(p) + " outside chain");
  const Point2& a = c[p.edge - 1];
  const Point2& b = c[p.edge];
  return a + p.t * (b - a);
}

// ---------------------------------------------------------------------------

Cone2 make_cone(const Point2& apex, const Dir2& u, const Dir2& v) {
  if (is_zero(u) || is_zero(v)) throw std::invalid_argument("cone direction is zero");
  int c = cross_sign(u, v);
  if (c > 0) return {apex, u, v, ConeKind::Proper};
  if (c < 0) return {apex, v, u, ConeKind::Proper};
  if (dot_sign(u, v) > 0) return {apex, u, u, ConeKind::Ray};
  return {apex, u, v, ConeKind::Halfplane};
}

Cone2 make_ray(const Point2& apex, const Dir2& u) { return make_cone(apex, u, u); }

bool cone_contains(const Cone2& c, const Dir2& d) {
  if (same_direction(d, c.u) || same_direction(d, c.v)) return true;
  switch (c.kind) {
    case ConeKind::Ray:
      return false;
    case ConeKind::Proper:
      return cross_sign(c.u, d) > 0 && cross_sign(d, c.v) > 0;
    case ConeKind::Halfplane:
      return cross_sign(c.u, d) > 0;
  }
  return false;
}

bool cones_apex_disjoint(const Cone2& c1, const Cone2& c2) {
  if (c1.apex != c2.apex) throw ApexMismatch("cones have different apexes");
  return !(cone_contains(c2, c1.u) || cone_contains(c2, c1.v) || cone_contains(c1, c2.u) ||
           cone_contains(c1, c2.v));
}

bool cones_separable(const std::optional<Cone2>& c1, const std::optional<Cone2>& c2) {
  if (c1 && c1->kind == ConeKind::Halfplane) return false;
  if (c2 && c2->kind == ConeKind::Halfplane) return false;
  if (c1 && c2) return cones_apex_disjoint(*c1, *c2);
  return true;
}

// ---------------------------------------------------------------------------

namespace {

bool arc_valid(const NormalArc& a) {
  int c = cross_sign(a.lo, a.hi);
  return c > 0 || (c == 0 && dot_sign(a.lo, a.hi) < 0);
}

bool strictly_inside(const NormalArc& a, const Dir2& d) {
  if (cross_sign(a.lo, a.hi) > 0) return cross_sign(a.lo, d) > 0 && cross_sign(d, a.hi) > 0;
  return cross_sign(a.lo, d) > 0;
}

// d in [lo, hi)
bool in_from_lo(const NormalArc& a, const Dir2& d) { return same_direction(d, a.lo) || strictly_inside(a, d); }
// d in (lo, hi]
bool in_to_hi(const NormalArc& a, const Dir2& d) { return same_direction(d, a.hi) || strictly_inside(a, d); }

}  // namespace

NormalArc semicircle(const Dir2& w) {
  if (is_zero(w)) throw std::invalid_argument("zero constraint vector");
  return {perp_cw(w), perp_ccw(w)};
}

bool arc_contains(const NormalArc& a, const Dir2& n) {
  if (strictly_inside(a, n)) return true;
  return (!a.lo_open && same_direction(n, a.lo)) || (!a.hi_open && same_direction(n, a.hi));
}

bool arc_equal(const NormalArc& a, const NormalArc& b) {
  return same_direction(a.lo, b.lo) && same_direction(a.hi, b.hi) && a.lo_open == b.lo_open &&
         a.hi_open == b.hi_open;
}

std::optional<NormalArc> arc_intersect(const NormalArc& a, const NormalArc& b) {
  if (!arc_valid(a) || !arc_valid(b)) throw ArcTooWide("arc wider than a semicircle");
  NormalArc r;
  if (in_from_lo(b, a.lo))
    r.lo = a.lo;
  else if (in_from_lo(a, b.lo))
    r.lo = b.lo;
  else
    return std::nullopt;
  if (in_to_hi(b, a.hi))
    r.hi = a.hi;
  else if (in_to_hi(a, b.hi))
    r.hi = b.hi;
  else
    return std::nullopt;
  if (!arc_valid(r)) return std::nullopt;
  return r;
}

Eigen::Vector2d arc_bisector(const NormalArc& a) {
  if (cross_sign(a.lo, a.hi) == 0) return to_vec(perp_ccw(a.lo)).normalized();
  return (to_vec(a.lo).normalized() + to_vec(a.hi).normalized()).normalized();
}

std::optional<NormalArc> feasible_normals(std::span<const Dir2> ws) {
  if (ws.empty()) throw std::invalid_argument("no constraints");
  std::optional<NormalArc> arc = semicircle(ws[0]);
  for (std::size_t i = 1; i < ws.size() && arc; ++i) arc = arc_intersect(*arc, semicircle(ws[i]));
  return arc;
}

std::optional<NormalArc> separating_normals(const Point2& p, std::span<const Point2> above,
                                            std::span<const Point2> below) {
  std::vector<Dir2> ws;
  ws.reserve(above.size() + below.size());
  for (const auto& q : above)
    if (q != p) ws.push_back(q - p);
  for (const auto& q : below)
    if (q != p) ws.push_back(p - q);
  return feasible_normals(ws);
}

}  // namespace threadkit
