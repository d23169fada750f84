#ifndef SUBFREQ_SAMPLING_HPP
#define SUBFREQ_SAMPLING_HPP

#include <cstdint>
#include <iosfwd>
#include <set>

#include "subfreq/dataset.hpp"
#include "subfreq/rng.hpp"

namespace subfreq {

/// Uniform sample of t full rows, drawn with replacement. Full rows are
/// retained so the column query can arrive after the sample is built.
struct RowSample {
    Dataset sampled_rows;  // t x d, same alphabet as the source
    std::size_t t = 0;
    std::size_t n = 0;  // source row count
    double rate() const { return double(t) / double(n); }
};

// t = ceil(eps^-2 * ln(2/delta)); the explicit constant from the additive
// Chernoff step delta = 2*exp(-eps^2 t).
std::size_t sample_size(double eps, double delta);

RowSample build_sample(const Dataset& a, std::size_t t, Rng& rng);

// Estimate of the absolute frequency of pattern b on columns c:
// (matches in the sample) / rate.
double estimate_frequency(const RowSample& s, const ColumnQuery& c,
                          std::span<const std::uint32_t> b);

// Every distinct projected pattern in the sample whose estimated frequency
// is >= (phi - eps) * n. Requires eps < phi.
std::set<std::uint64_t> sample_heavy_hitters(const RowSample& s, const ColumnQuery& c,
                                             double phi, double eps);

// Sample persistence: dataset text format plus a provenance header comment
// recording the source row count.
void save_sample(const RowSample& s, std::ostream& out, std::uint64_t seed);
RowSample load_sample(std::istream& in, const std::string& name = "<stream>");

}  // namespace subfreq

#endif
