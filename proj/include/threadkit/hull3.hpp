#ifndef THREADKIT_HULL3_HPP
#define THREADKIT_HULL3_HPP

#include "threadkit/geom.hpp"

#include <Eigen/Geometry>
#include <array>
#include <span>
#include <stdexcept>
#include <vector>

namespace threadkit {

struct Dir3 {
  Scalar dx, dy, dz;
};

struct Point3 {
  Scalar x, y, z;
};

inline Dir3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator+(const Point3& a, const Dir3& d) { return {a.x + d.dx, a.y + d.dy, a.z + d.dz}; }
inline Dir3 operator+(const Dir3& a, const Dir3& b) { return {a.dx + b.dx, a.dy + b.dy, a.dz + b.dz}; }
inline Dir3 operator-(const Dir3& a) { return {-a.dx, -a.dy, -a.dz}; }
inline Dir3 operator*(const Scalar& s, const Dir3& d) { return {s * d.dx, s * d.dy, s * d.dz}; }
inline bool operator==(const Point3& a, const Point3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
inline bool operator==(const Dir3& a, const Dir3& b) { return a.dx == b.dx && a.dy == b.dy && a.dz == b.dz; }

inline Scalar dot(const Dir3& a, const Dir3& b) { return a.dx * b.dx + a.dy * b.dy + a.dz * b.dz; }
inline Dir3 cross(const Dir3& a, const Dir3& b) {
  return {a.dy * b.dz - a.dz * b.dy, a.dz * b.dx - a.dx * b.dz, a.dx * b.dy - a.dy * b.dx};
}
inline bool is_zero(const Dir3& d) { return sgn(d.dx) == 0 && sgn(d.dy) == 0 && sgn(d.dz) == 0; }
inline Eigen::Vector3d to_vec(const Dir3& d) { return {to_double(d.dx), to_double(d.dy), to_double(d.dz)}; }
inline Eigen::Vector3d to_vec(const Point3& p) { return {to_double(p.x), to_double(p.y), to_double(p.z)}; }

// Sign of det(b - a, c - a, d - a): positive when d lies on the side the
// normal (b - a) x (c - a) points to.
int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

class Chain3 {
 public:
  std::size_t size() const { return vertices_.size(); }
  std::size_t edge_count() const { return vertices_.size() - 1; }
  const Point3& operator[](std::size_t i) const { return vertices_[i]; }
  std::span<const Point3> vertices() const { return vertices_; }
  friend bool operator==(const Chain3& a, const Chain3& b) { return a.vertices_ == b.vertices_; }

 private:
  explicit Chain3(std::vector<Point3> v) : vertices_(std::move(v)) {}
  friend Chain3 validate_chain3(std::vector<Point3> raw);
  std::vector<Point3> vertices_;
};

// Same rules as validate_chain, with exact segment tests in space.
Chain3 validate_chain3(std::vector<Point3> raw);

Chain3 lift(const Chain2& c);
Point3 point_at(const Chain3& c, const ChainParam& p);

struct Degenerate : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Hull3 {
  std::vector<Point3> points;                    // input points
  std::vector<std::size_t> vertices;             // indices of hull vertices
  std::vector<std::array<std::size_t, 3>> faces;  // counterclockwise seen from outside
  std::vector<Eigen::Vector3d> normals;          // unit outward normals
  bool flat = false;  // coplanar input: faces cover both sides of one polygon
  std::vector<std::size_t> ring;  // flat only: the polygon, counterclockwise about the first face's normal
};

// Incremental hull with exact orientation tests.
Hull3 hull3(std::span<const Point3> points);

// Outward (unnormalized) normal of face f.
Dir3 face_normal(const Hull3& h, std::size_t f);

}  // namespace threadkit

#endif
