#ifndef SUBFREQ_RNG_HPP
#define SUBFREQ_RNG_HPP

#include <cstdint>
#include <random>

namespace subfreq {

using Rng = std::mt19937_64;

// splitmix64 step; used to derive independent child seeds from a root seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t child_seed(std::uint64_t root, std::uint64_t index) {
    return mix_seed(root ^ mix_seed(index + 1));
}

// Unbiased draw from [0, bound). Avoids std::uniform_int_distribution so
// sequences are identical across standard library implementations.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// Uniform double in [0,1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace subfreq

#endif
