#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace projlab {

/// Counter-based 64-bit generator (SplitMix64). The state advances by the
/// golden-ratio increment and each output is a finalizer of the counter, so
/// the stream is a pure function of (seed, call index). Reference outputs are
/// pinned in docs/rng.md and tests so ports in other languages can reproduce
/// every experiment byte for byte.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed), seed0_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller on two uniforms; the spare is cached,
    /// so a normal costs one or zero pairs of draws.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Entries of a standard complex Ginibre matrix: real and imaginary
    /// parts independent N(0,1).
    std::complex<double> next_complex_normal() {
        const double re = next_normal();
        const double im = next_normal();
        return {re, im};
    }

    /// Derived stream, a pure function of the original seed and the stream
    /// id. Independent of how much the parent has been consumed, so
    /// per-cell seeding is stable under any execution order.
    SplitMix64 child(std::uint64_t stream) const {
        std::uint64_t z = seed0_ ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return SplitMix64(z ^ (z >> 31));
    }

    std::uint64_t seed() const { return seed0_; }

private:
    std::uint64_t state_;
    std::uint64_t seed0_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace projlab
