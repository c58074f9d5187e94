// Seeded random source. All randomized code takes an explicit Rng (or a
// master seed from which per-trial generators are derived), never global
// state. Distributions are hand-rolled on top of mt19937_64 so that streams
// are bit-identical across platforms and standard-library versions.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace qdp {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Independent stream for trial `index` of a suite seeded with `seed`.
    static Rng for_trial(std::uint64_t seed, std::uint64_t index) {
        return Rng(splitmix64(seed) ^ splitmix64(index + 1));
    }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(engine_() % n);
    }

    // Standard normal via Box-Muller (cosine branch).
    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi_ * u2);
    }

    // Re and Im independently standard normal.
    std::complex<double> complex_gaussian() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * pi_ * u2), r * std::sin(2.0 * pi_ * u2)};
    }

private:
    static constexpr double pi_ = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

}  // namespace qdp
