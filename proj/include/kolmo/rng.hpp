#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "kolmo/vec.hpp"

namespace kolmo {

/// SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Random stream keyed by (seed, stream index). Streams with different keys are
/// decorrelated through mix64, so episode i draws the same numbers no matter
/// which thread runs it or in what order.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits; independent of the standard
    /// library's distribution implementations.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (one value per call).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform point in the open unit ball of R^m (polar method: direction
    /// times U^{1/m}).
    Vec unit_ball(std::size_t m) {
        Vec v(m);
        if (m == 1) {
            v[0] = 2.0 * uniform() - 1.0;
            return v;
        }
        if (m == 2) {
            const double r = std::sqrt(uniform());
            const double a = 2.0 * std::numbers::pi * uniform();
            v[0] = r * std::cos(a);
            v[1] = r * std::sin(a);
            return v;
        }
        double n2 = 0.0;
        while (n2 == 0.0) {
            for (std::size_t i = 0; i < m; ++i) v[i] = normal();
            n2 = dot(v, v);
        }
        const double r = std::pow(uniform(), 1.0 / static_cast<double>(m));
        return v * (r / std::sqrt(n2));
    }

    /// Uniform point in the unit ball by rejection from the cube.
    Vec unit_ball_rejection(std::size_t m) {
        for (;;) {
            Vec v(m);
            for (std::size_t i = 0; i < m; ++i) v[i] = 2.0 * uniform() - 1.0;
            if (dot(v, v) < 1.0) return v;
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace kolmo
