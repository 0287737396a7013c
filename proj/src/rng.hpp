#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dualmink::rng {

// All randomized code derives values through these helpers instead of
// <random> distributions, whose output is implementation-defined. This
// keeps every seeded result identical across standard libraries.

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream seed for (seed, stream_index).
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit(uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double uniform01(std::mt19937_64& g) { return to_unit(g()); }

/// Uniform in [lo, hi).
inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

/// One standard normal pair (Box-Muller; consumes exactly two draws).
inline void normal_pair(std::mt19937_64& g, double& z0, double& z1) {
    const double u1 = 1.0 - uniform01(g); // (0, 1]
    const double u2 = uniform01(g);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    z0 = r * std::cos(t);
    z1 = r * std::sin(t);
}

} // namespace dualmink::rng
