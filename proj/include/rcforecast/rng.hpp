#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

namespace rcf {

/// SplitMix64 pseudo-random generator (Steele, Lea & Flood 2014).
///
/// Chosen because it is a well-documented 64-bit generator with natural
/// splittable seeding: independent child streams are derived by hashing the
/// seed together with a stream label, so every random draw in the project is
/// a pure function of (seed, label, call index). Reproducibility is
/// guaranteed within this implementation, not across languages.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    /// Unbiased uniform integer in [0, n), n > 0. Rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    /// Standard normal deviate via Box-Muller. The spare value is cached, so
    /// interleaving normal() with other draws changes the stream but stays
    /// deterministic.
    double normal(double mean = 0.0, double sd = 1.0) {
        if (spare_) {
            const double z = *spare_;
            spare_.reset();
            return mean + sd * z;
        }
        double u = next_double();
        const double v = next_double();
        if (u <= 0.0) u = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(a);
        return mean + sd * (r * std::cos(a));
    }

    /// Child generator for the labelled substream of `seed`. Stable under
    /// call order: derive(s, k) depends only on s and k.
    static SplitMix64 derive(std::uint64_t seed, std::uint64_t label) {
        SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (label + 1)));
        return SplitMix64(g.next_u64());
    }

private:
    std::uint64_t state_;
    std::optional<double> spare_;
};

}  // namespace rcf
