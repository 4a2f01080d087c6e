#pragma once

#include <cstdint>
#include <vector>

namespace pmfix {

/// Deterministic 64-bit generator (splitmix64). Used instead of <random>
/// distributions so that fuzz reports are byte-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n) by rejection; n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Uniform real in [0, 1) with 53 random bits.
    double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform real in [lo, hi).
    double real_in(double lo, double hi) { return lo + (hi - lo) * real01(); }

    /// k distinct integers drawn from [lo, hi], returned in draw order.
    std::vector<long long> distinct_ints(int k, long long lo, long long hi);

private:
    std::uint64_t state_;
};

/// Mixes a base seed with a stream index so parallel trials stay independent
/// and reproducible.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    Rng r(seed ^ (0x632be59bd9b4e019ULL * (stream + 1)));
    return r.next_u64();
}

}  // namespace pmfix
