// rng.hpp
// Counter-based seeded random numbers for reproducible noise synthesis.
// Algorithm (pinned, v1): the splitmix64 output function applied to the Weyl
// sequence seed + (counter+1) * 0x9E3779B97F4A7C15, with standard normals via
// Box-Muller on consecutive counter pairs.  Stateless in the counter, so any
// sample can be generated independently and in any order.
#pragma once

#include <cstdint>
#include <vector>

namespace molback {

// 64-bit output for (seed, counter).
std::uint64_t counter_rng_u64(std::uint64_t seed, std::uint64_t counter);

// Uniform double in (0, 1].
double counter_rng_unit(std::uint64_t seed, std::uint64_t counter);

// Standard normal sample with index i (consumes counters 2i and 2i+1).
double gaussian_sample(std::uint64_t seed, std::uint64_t index);

std::vector<double> gaussian_vector(std::uint64_t seed, std::size_t count);

}  // namespace molback
