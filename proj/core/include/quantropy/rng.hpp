#pragma once

#include <complex>
#include <cstdint>

namespace quantropy {

/// Counter-based pseudo-random generator (SplitMix64 finalizer over
/// seed + counter). Every draw is a pure function of (seed, stream,
/// counter), so suites are reproducible from a single 64-bit seed and
/// independent streams can be handed to parallel workers.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(seed ^ mix(stream ^ 0x517cc1b727220a95ULL)) {}

    std::uint64_t next_u64() { return mix(base_ + (++counter_) * kGolden); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    /// Uniform over the complex box [-1,1] x [-1,1]i.
    std::complex<double> complex_box() {
        const double re = uniform(-1.0, 1.0);
        const double im = uniform(-1.0, 1.0);
        return {re, im};
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

}  // namespace quantropy
