#pragma once

#include <cstdint>

namespace lnc {

/// splitmix64: the portable 64-bit generator used for every seeded draw in
/// this library. A fixed seed yields the same stream on every platform, and
/// independent substreams are derived by feeding outputs back in as seeds.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

inline constexpr const char* kPrngName = "splitmix64";

} // namespace lnc
