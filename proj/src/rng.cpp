#include "molback/rng.hpp"

#include <cmath>
#include <numbers>

namespace molback {

std::uint64_t counter_rng_u64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double counter_rng_unit(std::uint64_t seed, std::uint64_t counter) {
    // 53 random bits mapped to (0, 1]; never 0, so logs are safe.
    return ((counter_rng_u64(seed, counter) >> 11) + 1) * 0x1.0p-53;
}

double gaussian_sample(std::uint64_t seed, std::uint64_t index) {
    const double u1 = counter_rng_unit(seed, 2 * index);
    const double u2 = counter_rng_unit(seed, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> gaussian_vector(std::uint64_t seed, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = gaussian_sample(seed, i);
    return out;
}

}  // namespace molback
