#include <doctest.h>

#include "support.hpp"

#include <cmath>

using namespace threadkit;
using support::pt;

namespace {

Dir2 deg(double a) {
  // Rational direction close to angle a; exact for multiples of 45 degrees.
  const double r = a * std::numbers::pi / 180;
  long x = std::lround(std::cos(r) * 1000000), y = std::lround(std::sin(r) * 1000000);
  return {Scalar(x), Scalar(y)};
}

double angle_of(const Dir2& d) {
  double a = std::atan2(to_double(d.dy), to_double(d.dx)) * 180 / std::numbers::pi;
  return a < 0 ? a + 360 : a;
}

}  // namespace

TEST_CASE("scalar text round trip") {
  for (const char* s : {"0", "12", "-3.25", "7/9", "-1/3", "0.001", "1e3", "2.5E-2", "1000000000000000000000"}) {
    const Scalar v = parse_scalar(s);
    CHECK(parse_scalar(format_scalar(v)) == v);
  }
  CHECK(parse_scalar("2.5E-2") == Scalar(1, 40));
  CHECK(format_scalar(Scalar(1, 8)) == "0.125");
  CHECK(format_scalar(Scalar(-7, 3)) == "-7/3");
  CHECK_THROWS_AS(parse_scalar("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar(""), std::invalid_argument);
}

TEST_CASE("from_double is exact") {
  for (double d : {0.1, -2.75, 1e-300, 123456789.123})
    CHECK(to_double(from_double(d)) == d);
}

TEST_CASE("orientation") {
  CHECK(orient(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
  CHECK(orient(pt(0, 0), pt(1, 1), pt(2, 2)) == 0);
  CHECK(orient(pt(0, 0), pt(0, 1), pt(1, 1)) == -1);
  // Near-collinear input that double arithmetic misjudges.
  const Point2 a{Scalar(1, 3), Scalar(1, 3)}, b{Scalar(2, 3), Scalar(2, 3)};
  CHECK(orient(a, b, {Scalar(1), Scalar(1)}) == 0);
  CHECK(orient(a, b, {Scalar(1), Scalar(1) + Scalar(1, 1000000000) * Scalar(1, 1000000000)}) == 1);
}

TEST_CASE("validate_chain") {
  SUBCASE("canonical input is kept") { CHECK(support::zig().size() == 4); }
  SUBCASE("collinear run merged") {
    auto c = validate_chain({pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 2)});
    REQUIRE(c.size() == 3);
    CHECK(c[1] == pt(2, 0));
  }
  SUBCASE("crossing edges") {
    try {
      validate_chain({pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)});
      FAIL("expected SelfIntersection");
    } catch (const ChainError& e) {
      CHECK(e.kind() == ChainErrorKind::SelfIntersection);
      CHECK(e.first() == 1);
      CHECK(e.second() == 3);
    }
  }
  SUBCASE("repeated vertex") {
    try {
      validate_chain({pt(0, 0), pt(1, 1), pt(1, 1)});
      FAIL("expected DuplicateVertex");
    } catch (const ChainError& e) {
      CHECK(e.kind() == ChainErrorKind::DuplicateVertex);
      CHECK(e.first() == 2);
    }
  }
  SUBCASE("too short") { CHECK_THROWS_AS(validate_chain({pt(0, 0)}), ChainError); }
  SUBCASE("back-tracking overlap") {
    CHECK_THROWS_AS(validate_chain({pt(0, 0), pt(4, 0), pt(2, 0)}), ChainError);
  }
  SUBCASE("touching a non-adjacent vertex") {
    CHECK_THROWS_AS(validate_chain({pt(0, 0), pt(4, 0), pt(4, 4), pt(2, 0)}), ChainError);
  }
  SUBCASE("monotone fast path agrees with the quadratic scan") {
    std::mt19937 rng(5);
    for (int it = 0; it < 200; ++it) {
      auto c = support::random_chain(rng, 6, 5);
      if (!c) continue;
      // Every accepted chain has no intersecting non-adjacent edges.
      for (std::size_t i = 1; i <= c->edge_count(); ++i)
        for (std::size_t j = i + 2; j <= c->edge_count(); ++j)
          CHECK_FALSE(segments_intersect((*c)[i - 1], (*c)[i], (*c)[j - 1], (*c)[j]));
    }
  }
}

TEST_CASE("params") {
  CHECK(point_at(support::seg(), {1, Scalar(1, 2)}) == pt(0, 2));
  CHECK(point_at(support::zig(), {2, Scalar(0)}) == pt(2, 2));
  CHECK(point_at(support::parab(), {3, Scalar(1, 3)}) == Point2{Scalar(7, 3), Scalar(17, 3)});
  CHECK(canonical({1, Scalar(1)}, 4).edge == 2);
  CHECK(canonical({3, Scalar(1)}, 4).edge == 3);
  CHECK_THROWS_AS(canonical({4, Scalar(0)}, 4), OutOfRange);
  CHECK_THROWS_AS(point_at(support::seg(), {1, Scalar(2)}), OutOfRange);
  const ChainParam p{2, Scalar(1, 4)};
  const ChainParam r = reverse_param(p, 5);
  CHECK(r.edge == 3);
  CHECK(r.t == Scalar(3, 4));
  CHECK(param_equal(reverse_param(r, 5), p));
  CHECK(format_param({2, Scalar(1, 3)}) == "edge 2, t=1/3");
}

TEST_CASE("cones") {
  const Point2 o = pt(0, 0);
  // Directions to HOOK's prefix neighbours of (0,0) and its suffix neighbours.
  const Cone2 prefix = make_cone(o, Dir2{Scalar(10), Scalar(-10)}, Dir2{Scalar(10), Scalar(10)});
  const Cone2 suffix = make_cone(o, Dir2{Scalar(50), Scalar(29)}, Dir2{Scalar(0), Scalar(10)});
  CHECK_FALSE(cones_apex_disjoint(prefix, suffix));

  const Cone2 c045 = make_cone(o, deg(0), deg(45));
  CHECK(cones_apex_disjoint(c045, make_ray(o, Dir2{Scalar(1), Scalar(-1)})));
  CHECK_FALSE(cones_apex_disjoint(c045, make_ray(o, Dir2{Scalar(1), Scalar(1)})));
  CHECK_FALSE(cones_apex_disjoint(c045, make_cone(o, deg(30.1), deg(90))));
  CHECK_THROWS_AS(cones_apex_disjoint(c045, make_ray(pt(1, 0), deg(90))), ApexMismatch);

  // Orientation of the arguments does not matter for proper cones.
  const Cone2 swapped = make_cone(o, deg(45), deg(0));
  CHECK(swapped.kind == ConeKind::Proper);
  CHECK(same_direction(swapped.u, deg(0)));

  const Cone2 half = make_cone(o, deg(0), deg(180));
  CHECK(half.kind == ConeKind::Halfplane);
  CHECK_FALSE(cones_separable(half, std::nullopt));
  CHECK(cones_separable(c045, std::nullopt));
  CHECK(cones_separable(std::nullopt, std::nullopt));
}

TEST_CASE("normal arcs") {
  SUBCASE("intersection of constraint arcs") {
    const NormalArc a{deg(-45), deg(90)}, b{deg(45), deg(225)};
    auto r = arc_intersect(a, b);
    REQUIRE(r);
    CHECK(angle_of(r->lo) == doctest::Approx(45));
    CHECK(angle_of(r->hi) == doctest::Approx(90));
  }
  SUBCASE("identity and bisector") {
    const NormalArc up{deg(0), deg(180)};
    auto r = arc_intersect(up, up);
    REQUIRE(r);
    CHECK(arc_equal(*r, up));
    const Eigen::Vector2d b = arc_bisector(*r);
    CHECK(b.x() == doctest::Approx(0).epsilon(1e-12));
    CHECK(b.y() == doctest::Approx(1));
  }
  SUBCASE("arcs sharing one boundary direction") {
    CHECK_FALSE(arc_intersect({deg(0), deg(90)}, {deg(90), deg(180)}));
  }
  SUBCASE("too wide") { CHECK_THROWS_AS(arc_intersect({deg(0), deg(270)}, {deg(0), deg(90)}), ArcTooWide); }
  SUBCASE("membership is open") {
    const NormalArc a{deg(0), deg(90)};
    CHECK(arc_contains(a, deg(45)));
    CHECK_FALSE(arc_contains(a, deg(0)));
    CHECK_FALSE(arc_contains(a, deg(90)));
    CHECK_FALSE(arc_contains(a, deg(200)));
  }
  SUBCASE("feasible normals versus brute force over a direction grid") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> u(-5, 5);
    for (int it = 0; it < 300; ++it) {
      std::vector<Dir2> ws;
      for (int k = 0; k < 1 + it % 4; ++k) {
        Dir2 w{Scalar(u(rng)), Scalar(u(rng))};
        if (!is_zero(w)) ws.push_back(w);
      }
      if (ws.empty()) continue;
      const auto arc = feasible_normals(ws);
      // Grid of rational directions; any feasible one must lie in the arc.
      for (int a = -12; a <= 12; ++a)
        for (int b = -12; b <= 12; ++b) {
          const Dir2 n{Scalar(a), Scalar(b)};
          if (is_zero(n)) continue;
          const bool ok = std::all_of(ws.begin(), ws.end(), [&](const Dir2& w) { return sgn(dot(n, w)) > 0; });
          CHECK(ok == (arc && arc_contains(*arc, n)));
        }
    }
  }
}

TEST_CASE("monotone direction") {
  auto z = monotone_direction(support::zig().vertices());
  REQUIRE(z);
  for (const auto& e : {Dir2{Scalar(2), Scalar(2)}, Dir2{Scalar(-2), Scalar(2)}}) CHECK(sgn(dot(*z, e)) > 0);
  CHECK_FALSE(monotone_direction(support::arc().vertices()));
  auto s = monotone_direction(support::seg().vertices());
  REQUIRE(s);
  CHECK(sgn(s->dy) > 0);
}
