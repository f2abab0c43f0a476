#pragma once

// Deterministic, implementation-independent random number utilities.
//
// The standard <random> distributions are not guaranteed to produce the same
// stream across standard library implementations, which would break the
// bit-for-bit reproducibility contract of the sampling oracle and the fuzz
// drivers.  SplitMix64 plus hand-rolled uniform/normal transforms give a fixed
// stream everywhere.

#include <cmath>
#include <cstdint>

namespace gwm {

/// SplitMix64 generator (Steele, Lea, Flood 2014 finalizer constants).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_u01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_u01();
    }

    /// Standard normal deviate (Box-Muller; one value per call, no caching,
    /// so the stream position stays easy to reason about).
    double next_normal() {
        double u1 = next_u01();
        double u2 = next_u01();
        // Guard the log against u1 == 0.
        if (u1 <= 0.0)
            u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Multiply-shift rejection-free mapping; bias is < 2^-64 * n,
        // irrelevant for sampling purposes here.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

/// Derives an independent stream for a sub-task (e.g. one sampling trial)
/// from a base seed.  Mixing through SplitMix64 decorrelates nearby indices.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    SplitMix64 mix(base ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
    return mix.next_u64();
}

} // namespace gwm
