#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace dpcp {

/// Uniform integer in [lo, hi] by rejection sampling on mt19937_64, so a seed
/// gives the same draws with every standard library.
inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty sampling range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(rng());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

}  // namespace dpcp
