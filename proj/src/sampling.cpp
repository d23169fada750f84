#include "subfreq/sampling.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "subfreq/oracle.hpp"

namespace subfreq {

std::size_t sample_size(double eps, double delta) {
    if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0,1)");
    if (delta <= 0 || delta >= 1) throw std::invalid_argument("delta must lie in (0,1)");
    const double t = std::log(2.0 / delta) / (eps * eps);
    // Slack absorbs roundoff at exact boundaries of the Chernoff expression.
    return static_cast<std::size_t>(std::ceil(t - 1e-6));
}

RowSample build_sample(const Dataset& a, std::size_t t, Rng& rng) {
    if (a.rows() == 0) throw std::invalid_argument("cannot sample from an empty dataset");
    if (t == 0) throw std::invalid_argument("sample size must be >= 1");
    std::vector<std::uint32_t> cells;
    cells.reserve(t * a.cols());
    for (std::size_t i = 0; i < t; ++i) {
        auto r = a.row(uniform_below(rng, a.rows()));
        cells.insert(cells.end(), r.begin(), r.end());
    }
    return RowSample{Dataset(t, a.cols(), a.alphabet(), std::move(cells)), t, a.rows()};
}

double estimate_frequency(const RowSample& s, const ColumnQuery& c,
                          std::span<const std::uint32_t> b) {
    if (b.size() != c.size())
        throw std::invalid_argument("pattern length does not match query size");
    std::size_t g = 0;
    for (std::size_t i = 0; i < s.sampled_rows.rows(); ++i) {
        auto r = s.sampled_rows.row(i);
        bool match = true;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (r[c[j]] != b[j]) { match = false; break; }
        }
        if (match) ++g;
    }
    return double(g) / s.rate();
}

std::set<std::uint64_t> sample_heavy_hitters(const RowSample& s, const ColumnQuery& c,
                                             double phi, double eps) {
    if (eps >= phi) throw std::invalid_argument("requires eps < phi");
    const double threshold = (phi - eps) * double(s.n);
    // Candidates are the patterns present in the sample; counting once via
    // the projected frequency vector is equivalent to estimating each.
    FrequencyVector fv = frequency_vector(s.sampled_rows, c);
    std::set<std::uint64_t> out;
    for (const auto& [id, g] : fv.counts) {
        if (double(g) / s.rate() >= threshold) out.insert(id);
    }
    return out;
}

void save_sample(const RowSample& s, std::ostream& out, std::uint64_t seed) {
    std::ostringstream comment;
    comment << "sample source_n=" << s.n << " t=" << s.t << " seed=" << seed;
    save_dataset(s.sampled_rows, out, comment.str());
}

RowSample load_sample(std::istream& in, const std::string& name) {
    std::string first;
    if (!std::getline(in, first) || first.rfind("# sample ", 0) != 0)
        throw parse_error(name + ": missing sample provenance header", 1);
    std::size_t pos = first.find("source_n=");
    if (pos == std::string::npos)
        throw parse_error(name + ": provenance header lacks source_n", 1);
    std::size_t n = std::stoull(first.substr(pos + 9));
    Dataset rows = load_dataset(in, name);
    std::size_t t = rows.rows();
    return RowSample{std::move(rows), t, n};
}

}  // namespace subfreq
