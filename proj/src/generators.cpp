#include "threadkit/generators.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

namespace threadkit {

Chain2 gen_monotone(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("gen_monotone needs n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dx(-1000, 1000), dy(1, 100);
  std::vector<Point2> v;
  v.reserve(n);
  long y = 0;
  v.push_back({Scalar(dx(rng)), Scalar(0)});
  while (v.size() < n) {
    y += dy(rng);
    Point2 q{Scalar(dx(rng)), Scalar(y)};
    // A collinear triple would be merged away by validation.
    if (v.size() >= 2 && orient(v[v.size() - 2], v.back(), q) == 0) continue;
    v.push_back(std::move(q));
  }
  return validate_chain(std::move(v));
}

Chain2 gen_fan(int k, double r_inner, double r_outer, double delta) {
  if (k < 2) throw ParameterError("gen_fan needs k >= 2");
  if (!(r_inner > 0 && r_inner < r_outer)) throw ParameterError("gen_fan needs 0 < r_inner < r_outer");
  if (!(delta > 0 && delta < std::numbers::pi / (2 * k))) throw ParameterError("gen_fan needs 0 < delta < pi / (2k)");
  std::vector<Point2> v;
  for (int j = 0; j <= 2 * k; ++j) {
    const double r = j % 2 == 0 ? r_inner : r_outer;
    v.push_back({from_double(r * std::cos(j * delta)), from_double(r * std::sin(j * delta))});
  }
  return validate_chain(std::move(v));
}

namespace {

bool touches(const std::vector<Point2>& v, const Point2& q) {
  const std::size_t m = v.size();
  const Point2& a = v.back();
  if (q == a) return true;
  if (m >= 2) {
    const Point2& b = v[m - 2];
    if (orient(b, a, q) == 0) return true;  // straight continuation or back-track
  }
  for (std::size_t i = 1; i + 1 < m; ++i)
    if (segments_intersect(v[i - 1], v[i], a, q)) return true;
  return false;
}

}  // namespace

Chain2 gen_random_simple(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("gen_random_simple needs n >= 2");
  constexpr int kRestarts = 200;
  constexpr int kTriesPerVertex = 200;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> step(-10, 10);
  for (int restart = 0; restart < kRestarts; ++restart) {
    std::vector<Point2> v{{Scalar(0), Scalar(0)}};
    bool stuck = false;
    while (v.size() < n && !stuck) {
      stuck = true;
      for (int attempt = 0; attempt < kTriesPerVertex; ++attempt) {
        Point2 q{v.back().x + step(rng), v.back().y + step(rng)};
        if (touches(v, q)) continue;
        v.push_back(std::move(q));
        stuck = false;
        break;
      }
    }
    if (!stuck) return validate_chain(std::move(v));
  }
  throw GenerationTimeout("gen_random_simple: rejection budget exhausted");
}

std::optional<std::uint64_t> seed_from_env() {
  const char* s = std::getenv("THREADKIT_SEED");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') return std::nullopt;
  return v;
}

}  // namespace threadkit
