#pragma once

#include <cstdint>
#include <random>

namespace mctsbn {

using Rng = std::mt19937_64;

// Unbiased integer in [0, n) by rejection. Implemented here rather than via
// std::uniform_int_distribution, whose output is implementation-defined;
// sampled artifacts must be reproducible from the seed alone.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace mctsbn
