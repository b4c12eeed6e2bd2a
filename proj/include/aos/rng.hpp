#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace aos {

/// splitmix64 finalizer; bijective 64-bit mixing.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Decorrelated per-replication seed stream derived from a base seed.
inline std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t replication) {
    return mix64(base_seed ^ mix64(replication + 1));
}

/// Seeded draws on top of mt19937_64. The engine's output sequence is pinned
/// by the standard, and the mappings below bypass the std::*_distribution
/// adapters, whose algorithms are implementation-defined; the same seed
/// therefore yields the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double unit_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Exp(rate) holding time; strictly positive and finite.
    double exponential(double rate) { return -std::log(unit_open()) / rate; }

    /// Uniform over {0, ..., bound-1} via modulo rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace aos
