#ifndef SUBFREQ_ORACLE_HPP
#define SUBFREQ_ORACLE_HPP

#include <cstdint>
#include <map>
#include <set>
#include <utility>

#include "subfreq/dataset.hpp"
#include "subfreq/rng.hpp"

namespace subfreq {

/// Sparse projected frequency vector: pattern id -> count. Absent ids have
/// count zero. total always equals the source row count.
struct FrequencyVector {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t domain_size = 0;  // q^{pattern_len}
    std::uint64_t total = 0;
    std::size_t pattern_len = 0;
    std::uint32_t q = 2;
};

// Exact, brute-force reference statistics. Everything here is Theta(n*d)
// and serves as ground truth for the estimators.
FrequencyVector frequency_vector(const Dataset& a, const ColumnQuery& c);

// Sum of f_i^p. p=0 counts distinct patterns, p=1 returns the row count.
double moment(const FrequencyVector& f, double p);

std::uint64_t point_frequency(const FrequencyVector& f, std::span<const std::uint32_t> b);

// Ids with f_i >= phi * moment(f,p)^{1/p}. Requires nonempty f, 0 < phi < 1.
std::set<std::uint64_t> heavy_hitters(const FrequencyVector& f, double p, double phi);

// Draws id i with probability f_i^p / F_p via inverse CDF over ids in
// increasing order; returns the id and its exact probability.
std::pair<std::uint64_t, double> lp_sample(const FrequencyVector& f, double p, Rng& rng);

}  // namespace subfreq

#endif
