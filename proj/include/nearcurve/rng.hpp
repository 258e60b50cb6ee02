// Deterministic 64-bit generator (SplitMix64). Standard-library distributions
// are not pinned across implementations; seeded experiments use this stream so
// a seed names the same instance list on every platform.
#pragma once

#include <cstdint>

namespace nearcurve {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi] (inclusive); bias is negligible at desk scale.
    long long range(long long lo, long long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(next() % span);
    }

private:
    std::uint64_t state_;
};

} // namespace nearcurve
