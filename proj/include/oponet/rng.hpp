#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "oponet/constants.hpp"

namespace oponet {

// splitmix64 finalizer.
inline std::uint64_t hash_mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Derives an independent substream seed from up to four labels
// (e.g. master seed, island index, epoch).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0, std::uint64_t d = 0) {
    std::uint64_t h = hash_mix(a + 0x9e3779b97f4a7c15ull);
    h = hash_mix(h ^ (b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
    h = hash_mix(h ^ (c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
    h = hash_mix(h ^ (d + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
    return h;
}

// mt19937_64 with hand-rolled variate generation. The standard library's
// distribution objects produce implementation-defined sequences; these
// helpers keep results identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform on {0, ..., n-1}, n > 0. Modulo bias is negligible for the
    // population-sized ranges used here.
    int uniform_int(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

    // Standard normal via Box-Muller with a cached spare.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = two_pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace oponet
