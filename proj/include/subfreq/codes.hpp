#ifndef SUBFREQ_CODES_HPP
#define SUBFREQ_CODES_HPP

#include <cstdint>
#include <vector>

#include "subfreq/dataset.hpp"
#include "subfreq/rng.hpp"

namespace subfreq {

/// A set of length-d binary words of common Hamming weight, stored as
/// bitmasks (bit i = column i). max_intersection is certified exact over
/// all pairs at construction.
struct Code {
    std::vector<std::uint64_t> words;
    std::uint32_t length = 0;
    std::uint32_t weight = 0;
    std::uint32_t max_intersection = 0;
};

inline constexpr std::uint64_t kDefaultCodeCap = 5'000'000;
inline constexpr std::uint64_t kDefaultStarCap = 1ULL << 22;

// C(n,k) with overflow saturation to UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// All C(d,k) weight-k words in lexicographic order of their index sets.
Code enumerate_constant_weight(std::uint32_t d, std::uint32_t k,
                               std::uint64_t cap = kDefaultCodeCap);

// Rejection-samples words of weight `weight` from B(d,weight), keeping a
// draw iff its intersection with every kept word is <= max_inter. Stops at
// target_size or errors after 100*target_size draws, reporting the size
// achieved.
Code sample_code_with_bound(std::uint32_t d, std::uint32_t weight, std::uint32_t max_inter,
                            std::size_t target_size, Rng& rng);

// The random-code construction: weight floor(eps*d), pairwise intersection
// <= floor((eps^2+gamma)*d). Sizes above floor(2^{gamma^2 d / ln 2}) are
// outside the guaranteed regime and may exhaust the retry budget.
Code sample_random_code(std::uint32_t d, double eps, double gamma, std::size_t target_size,
                        Rng& rng);

std::uint64_t lemma_code_size_cap(std::uint32_t d, double gamma);

// All q^{weight(y)} words z over [q]^d with supp(z) inside supp(y),
// enumerated in increasing pattern-id order.
std::vector<std::vector<std::uint32_t>> star(std::uint64_t y, std::uint32_t d, std::uint32_t q,
                                             std::uint64_t cap = kDefaultStarCap);

// Deduplicated union of star(u,q) over u in words, as a dataset with rows
// in lexicographic order.
Dataset star_set(const std::vector<std::uint64_t>& words, std::uint32_t d, std::uint32_t q,
                 std::uint64_t cap = kDefaultStarCap);

// Serialization reuse: a code as a q=2 dataset, one word per row.
Dataset code_to_dataset(const Code& code);

}  // namespace subfreq

#endif
