// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace pcmp {

/// splitmix64 step; used to derive stream keys from (seed, index, index) tuples.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Deterministic random stream.
 *
 * Engine is std::mt19937_64 (fully specified by the C++ standard), and all
 * distributions are generated here rather than with std:: distribution
 * objects, whose algorithms are implementation-defined. This pins the exact
 * draw sequence for a given key, which the harness relies on for
 * reproducible parallel Monte Carlo runs:
 *
 *   stream key = splitmix64 chain over (master_seed, sweep_index, trial_index)
 *   uniform    = high 53 bits / 2^53
 *   normal     = Box-Muller pair (second value cached)
 *   bounded    = rejection sampling
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Derive the per-trial stream key used by the harness.
    static std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t sweep_index,
                                    std::uint64_t trial_index) {
        std::uint64_t s = master_seed;
        std::uint64_t k = splitmix64(s);
        s = k ^ (0x9e3779b97f4a7c15ULL * (sweep_index + 1));
        k = splitmix64(s);
        s = k ^ (0xbf58476d1ce4e5b9ULL * (trial_index + 1));
        return splitmix64(s);
    }

    static Rng stream(std::uint64_t master_seed, std::uint64_t sweep_index,
                      std::uint64_t trial_index) {
        return Rng(stream_key(master_seed, sweep_index, trial_index));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % n;
    }

    /// Standard normal via Box-Muller; caches the second value of each pair.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Circularly-symmetric complex normal CN(0,1): Re, Im ~ N(0, 1/2).
    std::complex<double> cnormal() {
        const double scale = 0.7071067811865476; // 1/sqrt(2)
        return {scale * normal(), scale * normal()};
    }

private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace pcmp
