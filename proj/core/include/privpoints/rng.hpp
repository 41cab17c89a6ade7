#ifndef PRIVPOINTS_RNG_HPP
#define PRIVPOINTS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace privpoints {

/// splitmix64 finalizer, used to derive well-separated seeds for substreams.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for substream `index` of the stream seeded by `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix_seed(base ^ mix_seed(index));
}

/// Seeded generator wrapper. Uniform doubles are produced from the top
/// 53 bits of mt19937_64 output, so the value stream is identical on
/// every standard-conforming platform for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (-1/2, 1/2), endpoints excluded.
    double uniform_symmetric() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53 - 0.5;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Marsaglia polar method.
    double normal() {
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        return u * std::sqrt(-2.0 * std::log(s) / s);
    }

    /// Exponential with unit rate (inverse CDF).
    double exponential() {
        double u;
        do {
            u = uniform01();
        } while (u >= 1.0);
        return -std::log(1.0 - u);
    }

    /// Integer in [0, bound) without modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    /// Independent generator for substream `index` of the stream seeded by `base`.
    static Rng substream(std::uint64_t base, std::uint64_t index) {
        return Rng(derive_seed(base, index));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace privpoints

#endif  // PRIVPOINTS_RNG_HPP
