#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace pqbit::rng {

// splitmix64 finalizer; used to decorrelate seed/index pairs before they
// reach the engine.
inline constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent sub-stream seed from (seed, index).  Rows, cells
// and batches each get their own derived seed so results do not depend on
// evaluation order.
inline constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return mix(seed ^ mix(index + 0x632be59bd9b4e019ULL));
}

inline constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive(derive(seed, a), b);
}

// Thin deterministic wrapper around mt19937_64.  uniform01() uses the top
// 53 bits directly, so values are reproducible independent of the standard
// library's distribution implementations.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : eng_(mix(seed)) {}

    std::uint64_t next() { return eng_(); }

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Unbiased integer in [0, n) via rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace pqbit::rng
