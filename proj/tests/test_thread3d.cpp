#include <doctest.h>

#include "support.hpp"

#include <map>
#include <set>

using namespace threadkit;

namespace {

Point3 p3(long x, long y, long z) { return {Scalar(x), Scalar(y), Scalar(z)}; }

// Every face has all points on its inner side or on it; V - E + F = 2.
void check_hull_shape(const Hull3& h) {
  std::map<std::pair<std::size_t, std::size_t>, int> edges;
  for (const auto& f : h.faces) {
    for (const auto& q : h.points) CHECK(orient3d(h.points[f[0]], h.points[f[1]], h.points[f[2]], q) <= 0);
    for (int k = 0; k < 3; ++k) {
      auto e = std::minmax(f[k], f[(k + 1) % 3]);
      edges[e]++;
    }
  }
  if (!h.flat) {
    for (const auto& [e, count] : edges) CHECK(count == 2);
    CHECK(static_cast<long>(h.vertices.size()) - static_cast<long>(edges.size()) + static_cast<long>(h.faces.size()) == 2);
  }
}

// p is a hull vertex iff it lies strictly outside the hull of the other points.
bool brute_is_vertex(const std::vector<Point3>& pts, std::size_t i) {
  std::vector<Point3> rest;
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != i && !(pts[j] == pts[i])) rest.push_back(pts[j]);
  Hull3 h;
  try {
    h = hull3(rest);
  } catch (const Degenerate&) {
    return true;
  }
  if (h.flat) {
    const auto& f = h.faces[0];
    if (orient3d(h.points[f[0]], h.points[f[1]], h.points[f[2]], pts[i]) != 0) return true;
  }
  for (const auto& f : h.faces)
    if (orient3d(h.points[f[0]], h.points[f[1]], h.points[f[2]], pts[i]) > 0) return true;
  // On the boundary of the rest: a vertex only if it is not inside any face or edge; for
  // integer grids this happens only with coplanar points, which count as non-vertices.
  return false;
}

Chain3 double_cone() {
  return validate_chain3({p3(0, 1, -1), p3(1, 0, -1), p3(0, -1, -1), p3(-1, 0, -1), p3(0, 0, 0), p3(1, 1, 1), p3(-1, 1, 1),
                          p3(-1, -1, 1), p3(1, -1, 1)});
}

}  // namespace

TEST_CASE("hull3 basics") {
  const std::vector<Point3> tetra{p3(0, 0, 0), p3(1, 0, 0), p3(0, 1, 0), p3(0, 0, 1)};
  const Hull3 t = hull3(tetra);
  CHECK(t.faces.size() == 4);
  CHECK(t.vertices.size() == 4);
  check_hull_shape(t);

  std::vector<Point3> cube;
  for (int x : {0, 2})
    for (int y : {0, 2})
      for (int z : {0, 2}) cube.push_back(p3(x, y, z));
  cube.push_back(p3(1, 1, 1));
  cube.push_back(p3(1, 1, 0));
  cube.push_back(p3(2, 1, 1));
  const Hull3 c = hull3(cube);
  CHECK(c.vertices.size() == 8);
  CHECK(c.faces.size() == 12);
  check_hull_shape(c);
  for (std::size_t i = 0; i < c.normals.size(); ++i) CHECK(c.normals[i].norm() == doctest::Approx(1));

  CHECK_THROWS_AS(hull3(std::vector<Point3>{p3(0, 0, 0), p3(1, 1, 1)}), Degenerate);
  CHECK_THROWS_AS(hull3(std::vector<Point3>{p3(0, 0, 0), p3(1, 1, 1), p3(3, 3, 3)}), Degenerate);
  const Hull3 flat = hull3(std::vector<Point3>{p3(0, 0, 5), p3(4, 0, 5), p3(4, 4, 5), p3(0, 4, 5), p3(2, 2, 5)});
  CHECK(flat.flat);
  CHECK(flat.ring.size() == 4);
  CHECK(flat.vertices.size() == 4);
  check_hull_shape(flat);
}

TEST_CASE("hull3 versus point removal") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> u(-6, 6);
  for (int it = 0; it < 60; ++it) {
    std::vector<Point3> pts;
    for (int k = 0; k < 5 + it % 15; ++k) pts.push_back(p3(u(rng), u(rng), u(rng)));
    Hull3 h;
    try {
      h = hull3(pts);
    } catch (const Degenerate&) {
      continue;
    }
    check_hull_shape(h);
    if (h.flat) continue;
    const std::set<std::size_t> vs(h.vertices.begin(), h.vertices.end());
    std::set<std::size_t> seen_coords;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      // Duplicated coordinates: only one copy can be listed.
      bool dup = false;
      for (std::size_t j = 0; j < i; ++j) dup = dup || pts[j] == pts[i];
      if (dup) continue;
      CHECK(vs.count(i) == (brute_is_vertex(pts, i) ? 1u : 0u));
    }
  }
}

TEST_CASE("helix hull") {
  const Chain3 helix = support::helix3();
  std::vector<Point3> first(helix.vertices().begin(), helix.vertices().begin() + 6);
  CHECK(hull3(first).vertices.size() == 6);
  const Hull3 all = hull3(helix.vertices());
  check_hull_shape(all);
}

TEST_CASE("tangent cones") {
  std::vector<Point3> cube;
  for (int x : {0, 2})
    for (int y : {0, 2})
      for (int z : {0, 2}) cube.push_back(p3(x, y, z));
  const Hull3 h = hull3(cube);
  for (const auto& p : cube) {
    const SphericalPolygon s = tangent_cone_sphere(h, p);
    CHECK(s.kind == RegionKind::Polygon);
    REQUIRE(s.nodes.size() == 3);
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& n : s.nodes) mean += n;
    for (const auto& n : s.nodes) CHECK(n.dot(mean) > 0);
    // Convex and counterclockwise seen from outside.
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(s.nodes[k].cross(s.nodes[(k + 1) % 3]).dot(s.nodes[(k + 2) % 3]) > 0);
  }
  CHECK_THROWS_AS(tangent_cone_sphere(hull3(std::vector<Point3>{p3(0, 0, 0), p3(2, 0, 0), p3(0, 2, 0), p3(0, 0, 2), p3(0, 0, 1)}),
                                      p3(0, 0, 1)),
                  NotAVertex);
}

TEST_CASE("helix butterflies") {
  const Chain3 helix = support::helix3();
  const Eigen::Vector3d up(0, 0, 1);
  for (std::size_t e = 1; e <= helix.edge_count(); ++e) {
    for (const Scalar& t : {Scalar(0), Scalar(1, 2)}) {
      const ChainParam q{e, t};
      auto b = butterfly3_at(helix, q);
      REQUIRE(b);
      for (const auto& c : b->constraints) CHECK(sgn(dot(Dir3{Scalar(0), Scalar(0), Scalar(1)}, c)) > 0);
      const Eigen::Vector3d n = separating_plane_at(helix, q);
      CHECK(n.norm() == doctest::Approx(1));
      CHECK(n.dot(up) > 0);
      // The plane separates the vertices.
      const Eigen::Vector3d p = to_vec(point_at(helix, q));
      for (std::size_t i = 0; i < helix.size(); ++i) {
        const double s = n.dot(to_vec(helix[i]) - p);
        // At t = 0 the point p is vertex e - 1 itself.
        if (i + 1 < q.edge || (i + 1 == q.edge && sgn(t) > 0)) CHECK(s < 0);
        if (i >= q.edge) CHECK(s > 0);
      }
    }
  }
  CHECK(butterfly3_at(helix, vertex_param(0, helix.size())));
  CHECK(butterfly3_at(helix, vertex_param(helix.size() - 1, helix.size())));
}

TEST_CASE("symmetric double cone") {
  const Chain3 c = double_cone();
  REQUIRE(c.size() == 9);
  const Eigen::Vector3d n = separating_plane_at(c, vertex_param(4, c.size()));
  CHECK(std::abs(n.x()) < 1e-9);
  CHECK(std::abs(n.y()) < 1e-9);
  CHECK(n.z() == doctest::Approx(1));
}

TEST_CASE("feasible regions") {
  const Dir3 z{Scalar(0), Scalar(0), Scalar(1)};
  auto one = feasible_region({z});
  REQUIRE(one);
  CHECK(one->region.kind == RegionKind::Hemisphere);
  auto lune = feasible_region({z, Dir3{Scalar(1), Scalar(0), Scalar(0)}});
  REQUIRE(lune);
  CHECK(lune->region.kind == RegionKind::Lune);
  auto poly = feasible_region({z, Dir3{Scalar(1), Scalar(0), Scalar(0)}, Dir3{Scalar(0), Scalar(1), Scalar(0)}});
  REQUIRE(poly);
  CHECK(poly->region.kind == RegionKind::Polygon);
  CHECK(poly->region.nodes.size() == 3);
  for (const auto& c : poly->constraints) CHECK(sgn(dot(poly->interior, c)) > 0);
  CHECK_FALSE(feasible_region({z, -z}));
  CHECK_FALSE(feasible_region({Dir3{Scalar(1), Scalar(0), Scalar(1)}, Dir3{Scalar(-1), Scalar(0), Scalar(1)}, Dir3{Scalar(0), Scalar(0), Scalar(-1)}}));
}

TEST_CASE("sampled decision") {
  const Verdict3 helix = decide3_sampled(support::helix3(), 8);
  CHECK(helix.threadable_at_samples);
  CHECK(helix.checked_params == 11 * 8 + 1);

  const Verdict3 spiral = decide3_sampled(lift(support::spiral()), 8);
  CHECK_FALSE(spiral.threadable_at_samples);
  REQUIRE(spiral.witness);
  CHECK_FALSE(butterfly3_at(lift(support::spiral()), *spiral.witness));

  CHECK(decide3_sampled(lift(support::zig()), 8).threadable_at_samples);
  CHECK_FALSE(decide3_sampled(lift(support::hook()), 8).threadable_at_samples);
}

TEST_CASE("lifted planar chains reduce to the plane") {
  std::mt19937 rng(55);
  int checked = 0;
  for (int it = 0; it < 300; ++it) {
    auto c = support::random_chain(rng, 3 + it % 6, 5);
    if (!c) continue;
    const Chain3 l = lift(*c);
    for (std::size_t e = 1; e <= c->edge_count(); ++e)
      for (const Scalar& t : {Scalar(0), Scalar(1, 3), Scalar(1, 2)}) {
        const ChainParam q{e, t};
        CHECK(butterfly3_at(l, q).has_value() == butterfly_at(*c, q).has_value());
        ++checked;
      }
    // Sampling can only find real obstructions, and refining the grid keeps them.
    const Verdict3 v4 = decide3_sampled(l, 4), v8 = decide3_sampled(l, 8);
    if (!v4.threadable_at_samples) {
      CHECK_FALSE(v8.threadable_at_samples);
      CHECK_FALSE(decide(*c).threadable);
    }
  }
  CHECK(checked > 500);
}
