#ifndef THREADKIT_GENERATORS_HPP
#define THREADKIT_GENERATORS_HPP

#include "threadkit/geom.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace threadkit {

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct GenerationTimeout : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Random integer x, strictly increasing integer y. Exactly n vertices.
Chain2 gen_monotone(std::size_t n, std::uint64_t seed);

// 2k + 1 vertices alternating between the two radii at angles j * delta,
// starting and ending on the inner radius: k spikes.
Chain2 gen_fan(int k, double r_inner, double r_outer, double delta);

// Random walk with integer steps, each new edge rejected when it would touch
// the chain so far. Exactly n vertices.
Chain2 gen_random_simple(std::size_t n, std::uint64_t seed);

// Value of THREADKIT_SEED when set and numeric.
std::optional<std::uint64_t> seed_from_env();

}  // namespace threadkit

#endif
