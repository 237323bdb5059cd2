// rng.hpp -- reproducible streams: one master seed, SplitMix64-derived
// per-replicate seeds, hand-rolled variates so results do not depend on
// standard-library distribution internals
#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace gencop {

// SplitMix64 finalizer (Steele/Lea/Flood); used both as a mixer and to derive
// independent replicate seeds: seed_j = mix(master + (j+1)*GOLDEN)
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t idx) {
    return splitmix64(master + (idx + 1) * 0x9E3779B97F4A7C15ull);
}

struct RngStream {
    std::mt19937_64 eng;

    explicit RngStream(std::uint64_t seed) : eng(seed) {}

    // uniform on (0,1): 53-bit mantissa, zero excluded so logs stay finite
    double uniform() {
        std::uint64_t x = eng();
        double u = double(x >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double expo() { return -std::log(uniform()); }

    double normal() {
        // Marsaglia polar
        for (;;) {
            double a = 2.0 * uniform() - 1.0, b = 2.0 * uniform() - 1.0;
            double s = a * a + b * b;
            if (s > 0.0 && s < 1.0) return a * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    // Marsaglia-Tsang; shape boost for k < 1
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0, c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }
};

} // namespace gencop
