#pragma once

#include <cmath>
#include <cstdint>

namespace blockdet {

/// Self-contained 64-bit generator with a splitmix-style state advance,
/// specified bit for bit so instance streams replay identically in any
/// implementation:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output = z ^ (z >> 31)
///
/// uniform() maps the top 53 bits to [0,1) as ((out >> 11) * 2^-53); the
/// open-at-zero variant adds one before scaling. Normal variates come from
/// one Box-Muller pair per call (no rejection loops). Platform library
/// generators are deliberately not used anywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return scramble(state_);
    }

    /// Scrambles one value through the output function without touching any
    /// stream; used to derive independent sub-seeds as scramble(seed + index).
    static std::uint64_t scramble(std::uint64_t x) {
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1]; safe as a log() argument.
    double uniform_open0() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo + 1;
        return lo + static_cast<std::uint64_t>(uniform() * static_cast<double>(span)) % span;
    }

    /// One standard-normal draw; consumes two uniforms and discards the
    /// second Box-Muller component.
    double normal() {
        const double u1 = uniform_open0();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    /// A Box-Muller pair, used for the real/imaginary parts of one complex
    /// standard-normal entry.
    void normal_pair(double& a, double& b) {
        const double u1 = uniform_open0();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        a = r * std::cos(2.0 * kPi * u2);
        b = r * std::sin(2.0 * kPi * u2);
    }

private:
    static constexpr double kPi = 3.14159265358979323846;
    std::uint64_t state_;
};

} // namespace blockdet
