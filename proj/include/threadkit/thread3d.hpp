#ifndef THREADKIT_THREAD3D_HPP
#define THREADKIT_THREAD3D_HPP

#include "threadkit/hull3.hpp"

#include <optional>

namespace threadkit {

struct NotAVertex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyButterfly : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RegionKind {
  Polygon,     // convex geodesic polygon; nodes are its corners
  Lune,        // all constraints coplanar; nodes are the two bounding directions in that plane
  Hemisphere,  // constraints share one direction; the single node is the pole
};

struct SphericalPolygon {
  RegionKind kind = RegionKind::Polygon;
  std::vector<Eigen::Vector3d> nodes;  // unit vectors, counterclockwise seen from outside the sphere
};

// Outward normals of the faces around vertex p, ordered around p.
SphericalPolygon tangent_cone_sphere(const Hull3& h, const Point3& p);

// Open region of plane normals n with n.(q - p) < 0 for all points q before p
// and n.(q - p) > 0 for all points after p.
struct Butterfly3 {
  SphericalPolygon region;
  std::vector<Dir3> constraints;  // n . c > 0 for every entry
  Dir3 interior;                  // exact, satisfies every constraint strictly
};

std::optional<Butterfly3> butterfly3_at(const Chain3& c, const ChainParam& p);

// Strictly feasible region of {n : n . c > 0 for all c}; nullopt when empty.
std::optional<Butterfly3> feasible_region(std::vector<Dir3> constraints);

struct Verdict3 {
  bool threadable_at_samples = true;
  std::optional<ChainParam> witness;  // first empty butterfly in chain order
  std::size_t checked_params = 0;
};

// Checks every vertex and the parameters t = k / samples_per_edge on every
// edge. An empty butterfly proves the chain is not threadable; passing all
// samples does not prove the opposite.
Verdict3 decide3_sampled(const Chain3& c, int samples_per_edge);

// Unit normal of a plane through p that separates prefix from suffix.
Eigen::Vector3d separating_plane_at(const Chain3& c, const ChainParam& p);

}  // namespace threadkit

#endif
