#pragma once

#include <cmath>
#include <cstdint>

namespace minsvd {

/// SplitMix64 stream (Steele, Lea, Flood 2014). Used everywhere a seeded
/// stream is needed; portable across platforms, unlike the distributions in
/// <random>. Independent streams for a common seed are derived by mixing a
/// stream key into the initial state, so parallel structures (for example
/// the columns of a sparse embedding) can be generated in any order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Stream keyed by (seed, key): distinct keys give decorrelated streams.
    SplitMix64(std::uint64_t seed, std::uint64_t key)
        : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (key + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform in [0, bound) without modulo bias (rejection sampling).
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % bound;
    }

    /// Uniform double in (0, 1]: 53 random bits, never exactly zero.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller on the uniform stream.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace minsvd
