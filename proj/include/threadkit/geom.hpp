#ifndef THREADKIT_GEOM_HPP
#define THREADKIT_GEOM_HPP

#include "threadkit/scalar.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace threadkit {

struct Dir2 {
  Scalar dx, dy;
};

struct Point2 {
  Scalar x, y;
};

inline bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
inline Dir2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(const Point2& a, const Dir2& d) { return {a.x + d.dx, a.y + d.dy}; }
inline Dir2 operator*(const Scalar& s, const Dir2& d) { return {s * d.dx, s * d.dy}; }
inline Dir2 operator-(const Dir2& d) { return {-d.dx, -d.dy}; }
inline Dir2 operator+(const Dir2& a, const Dir2& b) { return {a.dx + b.dx, a.dy + b.dy}; }

inline Scalar cross(const Dir2& a, const Dir2& b) { return a.dx * b.dy - a.dy * b.dx; }
inline Scalar dot(const Dir2& a, const Dir2& b) { return a.dx * b.dx + a.dy * b.dy; }
inline bool is_zero(const Dir2& d) { return sgn(d.dx) == 0 && sgn(d.dy) == 0; }

// Rotations by +90 and -90 degrees; exact.
inline Dir2 perp_ccw(const Dir2& d) { return {-d.dy, d.dx}; }
inline Dir2 perp_cw(const Dir2& d) { return {d.dy, -d.dx}; }

inline Eigen::Vector2d to_vec(const Dir2& d) { return {to_double(d.dx), to_double(d.dy)}; }
inline Eigen::Vector2d to_vec(const Point2& p) { return {to_double(p.x), to_double(p.y)}; }

// Exact signs of cross(a, b) and dot(a, b). A floating-point filter settles
// clear cases; the rest fall back to integer arithmetic.
int cross_sign(const Dir2& a, const Dir2& b);
int dot_sign(const Dir2& a, const Dir2& b);

// Sign of (b - a) x (c - a): +1 left turn, 0 collinear, -1 right turn.
int orient(const Point2& a, const Point2& b, const Point2& c);

// Same angle (parallel, same sense). Both must be nonzero.
bool same_direction(const Dir2& a, const Dir2& b);
// Strict angular order in [0, 2pi) measured from +x.
bool angle_less(const Dir2& a, const Dir2& b);

// ---------------------------------------------------------------------------
// Chains

enum class ChainErrorKind { TooShort, DuplicateVertex, SelfIntersection };

class ChainError : public std::invalid_argument {
 public:
  ChainError(ChainErrorKind kind, std::size_t first, std::size_t second, const std::string& what)
      : std::invalid_argument(what), kind_(kind), first_(first), second_(second) {}

  ChainErrorKind kind() const { return kind_; }
  // Vertex index for DuplicateVertex; 1-based edge indices for SelfIntersection.
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  ChainErrorKind kind_;
  std::size_t first_, second_;
};

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A validated simple open polygonal chain v_0 .. v_{n-1}, n >= 2, with
// collinear same-direction runs merged. Edge e_i = (v_{i-1}, v_i) for i in [1, n-1].
class Chain2 {
 public:
  std::size_t size() const { return vertices_.size(); }
  std::size_t edge_count() const { return vertices_.size() - 1; }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }
  std::span<const Point2> vertices() const { return vertices_; }

  Chain2 reversed() const;

  friend Chain2 validate_chain(std::vector<Point2> raw);
  friend bool operator==(const Chain2& a, const Chain2& b) { return a.vertices_ == b.vertices_; }

 private:
  explicit Chain2(std::vector<Point2> v) : vertices_(std::move(v)) {}
  std::vector<Point2> vertices_;
};

// Throws ChainError. Strictly monotone chains skip the quadratic simplicity scan.
Chain2 validate_chain(std::vector<Point2> raw);

// Collinear same-direction interior vertices removed; no other checks.
std::vector<Point2> merge_collinear_runs(std::vector<Point2> raw);

// Closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// A direction u with u . e > 0 for every edge e, if one exists.
std::optional<Dir2> monotone_direction(std::span<const Point2> vertices);

// ---------------------------------------------------------------------------
// Parameters along a chain

struct ChainParam {
  std::size_t edge = 1;  // 1-based
  Scalar t;              // in [0, 1]
};

// t in [0,1) except the terminal vertex, which is (n-1, 1).
ChainParam canonical(const ChainParam& p, std::size_t vertex_count);
ChainParam vertex_param(std::size_t vertex, std::size_t vertex_count);
// Vertex index when the param sits exactly on a vertex.
std::optional<std::size_t> vertex_at(const ChainParam& p);
// (edge - 1) + t; a total order on params of one chain.
Scalar param_position(const ChainParam& p);
bool param_less(const ChainParam& a, const ChainParam& b);
bool param_equal(const ChainParam& a, const ChainParam& b);
// Maps a param on the reversed chain back onto the original, canonicalized.
ChainParam reverse_param(const ChainParam& p, std::size_t vertex_count);
std::string format_param(const ChainParam& p);

Point2 point_at(const Chain2& c, const ChainParam& p);

// ---------------------------------------------------------------------------
// Cones and normal arcs

enum class ConeKind { Ray, Proper, Halfplane };

// Closed cone at `apex` swept counterclockwise from u to v (angle at most pi).
struct Cone2 {
  Point2 apex;
  Dir2 u, v;
  ConeKind kind = ConeKind::Proper;
};

class ApexMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Orders u, v so the sweep is at most pi. Opposite directions give a halfplane
// swept counterclockwise from u.
Cone2 make_cone(const Point2& apex, const Dir2& u, const Dir2& v);
Cone2 make_ray(const Point2& apex, const Dir2& u);

// Closed cone membership of a direction.
bool cone_contains(const Cone2& c, const Dir2& d);

// True iff the closed cones meet only at the apex. Throws ApexMismatch.
bool cones_apex_disjoint(const Cone2& c1, const Cone2& c2);

// A line through the apex with c1 strictly on one side and c2 strictly on the
// other (apex excepted) exists. An absent cone imposes nothing.
bool cones_separable(const std::optional<Cone2>& c1, const std::optional<Cone2>& c2);

class ArcTooWide : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arc of unit normals swept counterclockwise from lo to hi, width in (0, pi].
struct NormalArc {
  Dir2 lo, hi;
  bool lo_open = true;
  bool hi_open = true;
};

// Open semicircle {n : n . w > 0}.
NormalArc semicircle(const Dir2& w);
bool arc_contains(const NormalArc& a, const Dir2& n);
bool arc_equal(const NormalArc& a, const NormalArc& b);
std::optional<NormalArc> arc_intersect(const NormalArc& a, const NormalArc& b);
Eigen::Vector2d arc_bisector(const NormalArc& a);

// Open arc of n with n . w > 0 for every w; nullopt when empty. `ws` must be nonempty.
std::optional<NormalArc> feasible_normals(std::span<const Dir2> ws);

// Normals that put every `above` point strictly on the positive side of the
// line through p and every `below` point strictly on the negative side.
std::optional<NormalArc> separating_normals(const Point2& p, std::span<const Point2> above,
                                            std::span<const Point2> below);

}  // namespace threadkit

#endif
