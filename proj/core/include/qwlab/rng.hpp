#pragma once

#include <cstdint>

namespace qwlab {

// splitmix64: tiny, seedable, identical bit stream on every platform. std::mt19937
// plus a distribution would not promise cross-platform double reproducibility.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [-1, 1): 53 mantissa bits, exact halving, no rounding ambiguity.
    double next_double() {
        return double(next_u64() >> 11) * (1.0 / 4503599627370496.0) - 1.0;
    }
};

}
