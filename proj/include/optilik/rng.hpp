#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace optilik {

// Deterministic seeded random stream. All drawing helpers are implemented on
// top of raw 64-bit output so that results are reproducible bit-for-bit for a
// given (seed, stream) pair, independent of platform library details.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(mix(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Rejection sampling keeps the draw unbiased.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Number of successes in m independent trials. m stays small in all
    // callers, so the direct loop is both adequate and reproducible.
    int binomial(int m, double p) {
        int hits = 0;
        for (int t = 0; t < m; ++t) hits += bernoulli(p) ? 1 : 0;
        return hits;
    }

    // Standard normal via Box-Muller (single value; the twin is discarded to
    // keep the stream layout independent of call parity).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 engine_;
};

// Derives an independent substream seed; nests for (seed, trial, class)-style
// hierarchies.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return RngStream::mix(seed ^ RngStream::mix(index + 0x6a09e667f3bcc909ULL));
}

// Seeded Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& items, RngStream& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_index(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace optilik
