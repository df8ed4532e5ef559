#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace sbridge {

// Deterministic 64-bit generator (SplitMix64 core). The output stream is a
// pure function of the seed, independent of platform or standard library, so
// every consumer of a fixed seed reproduces bit-identical results.
//
// Independent sub-streams for pipeline stages are derived with split(tag);
// the derived stream depends only on (current state, tag) and the parent is
// left untouched.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Rejection sampling keeps the draw unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::next_below: n must be >= 1");
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    // Standard normal draw (Box-Muller); consumes exactly two uniforms.
    double next_normal() noexcept {
        const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    double next_normal(double mean, double sigma) noexcept {
        return mean + sigma * next_normal();
    }

    Rng split(std::uint64_t tag) const noexcept {
        std::uint64_t z = state_ ^ (0x9E3779B97F4A7C15ull * (tag + 0x632BE59BD9B4E019ull));
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        return Rng(z);
    }

private:
    std::uint64_t state_;
};

}  // namespace sbridge
