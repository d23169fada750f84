#ifndef SUBFREQ_HARDGEN_HPP
#define SUBFREQ_HARDGEN_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "subfreq/dataset.hpp"
#include "subfreq/rng.hpp"

namespace subfreq {

enum class Problem { kF0, kHH, kFP, kLPSample };

// Which oracle quantity the instance's thresholds speak about.
enum class Statistic {
    kDistinctCount,   // F0 over the query columns
    kPointFrequency,  // frequency of the single witness pattern
    kMoment,          // F_p over the query columns
    kMassShare,       // sum of f_i^p over the witness set, divided by F_p
};

/// A planted distinguishing instance: a dataset, a query, and two predicted
/// bounds on an oracle statistic. threshold_high lower-bounds the statistic
/// when the planted word is in (case_in), threshold_low upper-bounds it when
/// it is out. witness holds the distinguished pattern id(s) over the query
/// columns, when the statistic refers to one.
struct HardInstance {
    Dataset data;
    ColumnQuery query;
    bool case_in = true;
    Problem problem = Problem::kF0;
    Statistic statistic = Statistic::kDistinctCount;
    double p = 0;
    double threshold_low = 0;
    double threshold_high = 0;
    std::vector<std::uint64_t> witness;
    std::vector<std::pair<std::string, std::string>> params;  // emitted in order
};

// Evaluates the instance's statistic exactly with the brute-force oracle.
double oracle_statistic(const HardInstance& inst);

// F0 distinguisher: T = t_size distinct weight-k binary words, a designated
// word y forced in or out of T (by swap, so |T| matches across the two
// cases); A is the q-ary star set of T and the query is supp(y). Distinct
// counts on supp(y) are >= q^k when y is in and <= k*q^{k-1} when it is out,
// a factor-q/k separation.
HardInstance gen_f0(std::uint32_t d, std::uint32_t k, std::uint32_t q, std::size_t t_size,
                    bool include_y, Rng& rng, bool verify = false);

// gen_f0 at the central weight k = d/2 (d even, q >= d/2); separation 2q/d.
// Records a "warning=no separation" param when the factor is 1.
HardInstance gen_f0_center(std::uint32_t d, std::uint32_t q, std::size_t t_size,
                           bool include_y, Rng& rng, bool verify = false);

// Rewrites each symbol as its base-q_target digits (most significant first),
// widening every column to ceil(log_{q_target} q) columns. The encoding is
// bijective per cell, so distinct counts are preserved on expanded queries.
Dataset reduce_alphabet(const Dataset& a, std::uint32_t q_target);

// Width used by reduce_alphabet: smallest w with q_target^w >= q.
std::uint32_t reduce_width(std::uint32_t q, std::uint32_t q_target);

// The original query c over a, translated to the expanded dataset.
ColumnQuery expand_query(const ColumnQuery& c, std::uint32_t width);

// Heavy-hitter distinguisher: 2^{floor(eps*d)} copies of the all-ones row
// plus the binary star set of a random constant-weight code T; the query is
// the complement of supp(y) and the witness is the all-zero pattern 0_S. Its
// frequency is >= 2^{floor(eps*d)} when y is in and
// <= |T| * 2^{floor((eps^2+gamma)d)} when it is out.
HardInstance gen_hh(std::uint32_t d, double eps, double gamma, std::size_t t_size,
                    bool include_y, Rng& rng, bool verify = false);

// Moment distinguisher. For p < 1: A is the star set of T (no all-ones
// block), the query is supp(y), and F_p is >= 2^{floor(eps*d)} when y is in
// and <= eq8_bound(...) when it is out; requires the intersection fraction
// c = floor((eps^2+gamma)d)/d to satisfy c < eps*(1/p - 1). For p > 1 the
// gen_hh instance is reused unchanged (same seed, same bytes).
HardInstance gen_fp(std::uint32_t d, double eps, double gamma, std::size_t t_size,
                    bool include_y, double p, Rng& rng, bool verify = false);

// Sampling distinguisher. For p < 1: the gen_fp dataset with the code's
// pairwise-intersection cap tightened below ceil(floor(eps*d)/2), and the
// witness set M' = patterns on supp(y) with weight >= ceil(floor(eps*d)/2).
// The exact l_p mass share of M' is >= 0.20 when y is in and exactly 0 when
// it is out. For p > 1 the gen_hh instance is reused.
HardInstance gen_lpsample(std::uint32_t d, double eps, double gamma, std::size_t t_size,
                          bool include_y, double p, Rng& rng, bool verify = false);

// The out-case moment bound 2^{cdp + eps*d*p + a(1-p)cd} * d^{1-p} with
// a = 2 + log2(1/c).
double eq8_bound(double p, double eps, double c, std::uint32_t d);

// Plain key=value metadata lines (problem, case, thresholds, query, witness
// ids, generator params).
void write_metadata(std::ostream& os, const HardInstance& inst);

}  // namespace subfreq

#endif
