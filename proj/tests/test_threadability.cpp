#include <doctest.h>

#include "support.hpp"
#include "threadkit/generators.hpp"

#include <cmath>

using namespace threadkit;
using support::pt;

namespace {

double angle_of(const Dir2& d) {
  double a = std::atan2(to_double(d.dy), to_double(d.dx)) * 180 / std::numbers::pi;
  return a < 0 ? a + 360 : a;
}

template <class F>
Chain2 mapped(const Chain2& c, F f) {
  std::vector<Point2> v;
  for (const auto& p : c.vertices()) v.push_back(f(p));
  return validate_chain(std::move(v));
}

// Exact rotation by the 3-4-5 angle plus a rational shift.
Point2 rotate345(const Point2& p) {
  return {(3 * p.x - 4 * p.y) / 5 + Scalar(7, 2), (4 * p.x + 3 * p.y) / 5 - Scalar(1, 3)};
}

}  // namespace

TEST_CASE("fixture verdicts") {
  CHECK(decide(support::seg()).threadable);
  CHECK(decide(support::zig()).threadable);
  CHECK(decide(support::parab()).threadable);
  CHECK(decide(support::arc()).threadable);

  const Verdict hook = decide(support::hook());
  CHECK_FALSE(hook.threadable);
  REQUIRE(hook.witness);
  CHECK_FALSE(butterfly_at(support::hook(), hook.witness->param));
  CHECK(hook.certificate.empty());

  const Verdict spiral = decide(support::spiral());
  CHECK_FALSE(spiral.threadable);
  REQUIRE(spiral.witness);
  CHECK_FALSE(support::brute_butterfly_nonempty(support::spiral(), spiral.witness->param));
}

TEST_CASE("butterfly at chosen points") {
  SUBCASE("ARC at its third vertex") {
    auto a = butterfly_at(support::arc(), vertex_param(2, 4));
    REQUIRE(a);
    CHECK(angle_of(a->lo) == doctest::Approx(45));
    CHECK(angle_of(a->hi) == doctest::Approx(90));
  }
  SUBCASE("HOOK at (0,0) is empty") { CHECK_FALSE(butterfly_at(support::hook(), vertex_param(2, 5))); }
  SUBCASE("SEG midpoint: the prefix lies where the normal points") {
    auto a = butterfly_at(support::seg(), {1, Scalar(1, 2)});
    REQUIRE(a);
    CHECK(angle_of(a->lo) == doctest::Approx(180));
    CHECK(same_direction(a->hi, Dir2{Scalar(1), Scalar(0)}));
  }
  SUBCASE("endpoints") {
    for (const auto& c : {support::zig(), support::arc(), support::spiral()})
      CHECK(butterfly_at(c, vertex_param(c.size() - 1, c.size())));
    CHECK(butterfly_at(support::zig(), vertex_param(0, 4)));
    // HOOK starts strictly inside the hull of the rest of the chain.
    CHECK_FALSE(butterfly_at(support::hook(), vertex_param(0, 5)));
  }
}

TEST_CASE("decide agrees with the oracle") {
  std::mt19937 rng(314);
  int threadable = 0, blocked = 0;
  for (int it = 0; it < 1500; ++it) {
    auto c = support::random_chain(rng, 3 + it % 7, 6);
    if (!c) continue;
    const Verdict v = decide(*c);
    const Verdict o = oracle_decide(*c);
    CHECK(v.threadable == o.threadable);
    (v.threadable ? threadable : blocked)++;
    if (!v.threadable) {
      REQUIRE(v.witness);
      CHECK_FALSE(support::brute_butterfly_nonempty(*c, v.witness->param));
    }
  }
  // Both outcomes must be well represented for the comparison to mean much.
  CHECK(threadable > 100);
  CHECK(blocked > 100);
}

TEST_CASE("decide agrees with the oracle on longer simple chains") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Chain2 c = gen_random_simple(6 + seed % 20, 1000 + seed);
    CHECK(decide(c).threadable == oracle_decide(c).threadable);
  }
}

TEST_CASE("strictly monotone chains are threadable") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Chain2 c = gen_monotone(3 + seed % 60, seed);
    REQUIRE(is_strictly_monotone(c));
    CHECK(decide(c).threadable);
  }
  CHECK(is_strictly_monotone(support::zig()));
  CHECK_FALSE(is_strictly_monotone(support::arc()));
}

TEST_CASE("verdict invariance") {
  std::mt19937 rng(77);
  for (int it = 0; it < 400; ++it) {
    auto c = support::random_chain(rng, 3 + it % 6, 5);
    if (!c) continue;
    const bool v = decide(*c).threadable;
    CHECK(decide(c->reversed()).threadable == v);
    CHECK(decide(mapped(*c, rotate345)).threadable == v);
    CHECK(decide(mapped(*c, [](const Point2& p) { return Point2{p.x, -p.y}; })).threadable == v);
    CHECK(decide(mapped(*c, [](const Point2& p) { return Point2{2 * p.x + p.y, p.y}; })).threadable == v);
  }
}

TEST_CASE("certificate soundness") {
  std::mt19937 rng(4242);
  int checked = 0;
  for (int it = 0; it < 800; ++it) {
    auto c = support::random_chain(rng, 3 + it % 7, 6);
    if (!c) continue;
    const Verdict v = decide(*c);
    if (!v.threadable) continue;
    REQUIRE_FALSE(v.certificate.empty());
    CHECK(param_equal(v.certificate.front().start, vertex_param(0, c->size())));
    CHECK(param_equal(canonical(v.certificate.back().end, c->size()), vertex_param(c->size() - 1, c->size())));
    for (std::size_t k = 0; k < v.certificate.size(); ++k) {
      const auto& iv = v.certificate[k];
      CHECK(param_less(iv.start, iv.end));
      if (k > 0) CHECK(param_equal(canonical(v.certificate[k - 1].end, c->size()), canonical(iv.start, c->size())));
      // Start, three interior points and the end all admit a separating line.
      const Scalar a = param_position(iv.start), b = param_position(iv.end);
      for (const Scalar& f : {Scalar(0), Scalar(1, 4), Scalar(1, 2), Scalar(3, 4), Scalar(1)}) {
        const Scalar pos = a + f * (b - a);
        mpz_class e = pos.get_num() / pos.get_den();
        std::size_t edge = std::min<std::size_t>(e.get_ui() + 1, c->edge_count());
        const ChainParam q{edge, pos - Scalar(edge - 1)};
        CHECK(butterfly_at(*c, q));
        CHECK(support::brute_butterfly_nonempty(*c, q));
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("collinearity roots") {
  // p(t) on the segment from (0,0) to (4,0) meets the line through (1,1), (1,-1) at t = 1/4.
  const Chain2 c = support::chain({{0, 0}, {4, 0}, {4, 4}});
  const auto r = collinearity_roots(c, 1, {pt(1, 1), pt(1, -1), pt(3, 2), pt(3, -2)}, Scalar(0), Scalar(1));
  CHECK(std::find(r.begin(), r.end(), Scalar(1, 4)) != r.end());
  CHECK(std::find(r.begin(), r.end(), Scalar(3, 4)) != r.end());
  CHECK(std::is_sorted(r.begin(), r.end()));
  for (const auto& t : r) {
    CHECK(sgn(t) > 0);
    CHECK(t < 1);
  }
}
