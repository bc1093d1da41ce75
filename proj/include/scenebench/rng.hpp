#pragma once

#include <cstdint>

namespace scenebench {

// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
// needed so that outputs are byte-identical across platforms; std::*
// distributions are not guaranteed stable across standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        // Multiply-shift; bias is negligible for the bounds used here and the
        // mapping is identical on every platform.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    // Uniform double in [0, 1).
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

private:
    std::uint64_t state_;
};

// Stateless mix of a seed with stream/index tags; handy for deriving
// independent deterministic substreams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ull + tag * 0xbf58476d1ce4e5b9ull));
    return rng.next();
}

}  // namespace scenebench
