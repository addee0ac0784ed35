#pragma once

#include <cstdint>
#include <random>

namespace rltopa {

/// Deterministic random source. The helpers avoid std::uniform_*_distribution
/// so draws are identical across standard libraries, which keeps whole runs
/// byte-reproducible from a single seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Modulo bias is below 1e-17 for small n.
    int uniform_int(int n) {
        return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
    }

    double uniform_range(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 gen_;
};

/// SplitMix64 mix, used to derive independent sub-stream seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace rltopa
