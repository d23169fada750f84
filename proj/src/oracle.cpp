#include "subfreq/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace subfreq {

FrequencyVector frequency_vector(const Dataset& a, const ColumnQuery& c) {
    if (c.size() > 0 && c.max_index() >= a.cols())
        throw std::invalid_argument("column index out of range for dataset");
    check_pattern_capacity(c.size(), a.alphabet());

    FrequencyVector f;
    f.pattern_len = c.size();
    f.q = a.alphabet();
    f.total = a.rows();
    f.domain_size = 1;
    for (std::size_t i = 0; i < c.size(); ++i) f.domain_size *= a.alphabet();

    const std::uint32_t q = a.alphabet();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto r = a.row(i);
        std::uint64_t id = 0;
        for (std::uint32_t j : c.columns()) id = id * q + r[j];
        ++f.counts[id];
    }
    return f;
}

double moment(const FrequencyVector& f, double p) {
    if (p < 0) throw std::invalid_argument("moment order p must be >= 0");
    if (p == 0) return double(f.counts.size());
    if (p == 1) return double(f.total);
    double sum = 0;
    for (const auto& [id, count] : f.counts) sum += std::pow(double(count), p);
    return sum;
}

std::uint64_t point_frequency(const FrequencyVector& f, std::span<const std::uint32_t> b) {
    if (b.size() != f.pattern_len)
        throw std::invalid_argument("pattern length does not match query size");
    auto it = f.counts.find(encode_pattern(b, f.q));
    return it == f.counts.end() ? 0 : it->second;
}

std::set<std::uint64_t> heavy_hitters(const FrequencyVector& f, double p, double phi) {
    if (f.counts.empty()) throw std::invalid_argument("frequency vector is empty");
    if (p <= 0) throw std::invalid_argument("heavy hitters require p > 0");
    if (phi <= 0 || phi >= 1) throw std::invalid_argument("phi must lie in (0,1)");
    const double threshold = phi * std::pow(moment(f, p), 1.0 / p);
    std::set<std::uint64_t> out;
    for (const auto& [id, count] : f.counts) {
        if (double(count) >= threshold) out.insert(id);
    }
    return out;
}

std::pair<std::uint64_t, double> lp_sample(const FrequencyVector& f, double p, Rng& rng) {
    if (f.counts.empty()) throw std::invalid_argument("frequency vector is empty");
    if (p <= 0) throw std::invalid_argument("lp_sample requires p > 0");
    const double fp = moment(f, p);
    const double u = uniform_unit(rng) * fp;
    double acc = 0;
    auto last = f.counts.begin();
    for (auto it = f.counts.begin(); it != f.counts.end(); ++it) {
        last = it;
        acc += std::pow(double(it->second), p);
        if (u < acc) break;
    }
    return {last->first, std::pow(double(last->second), p) / fp};
}

}  // namespace subfreq
