#include "subfreq/hardgen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "subfreq/codes.hpp"
#include "subfreq/oracle.hpp"

namespace subfreq {

namespace {

std::string fmt_num(double v) {
    if (v == std::floor(v) && std::abs(v) < 9.0e15) {
        std::ostringstream os;
        os << static_cast<long long>(v);
        return os.str();
    }
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

const char* problem_name(Problem p) {
    switch (p) {
        case Problem::kF0: return "f0";
        case Problem::kHH: return "hh";
        case Problem::kFP: return "fp";
        case Problem::kLPSample: return "lpsample";
    }
    return "?";
}

std::vector<std::uint32_t> support_of(std::uint64_t y, std::uint32_t d) {
    std::vector<std::uint32_t> cols;
    for (std::uint32_t i = 0; i < d; ++i)
        if (y & (1ULL << i)) cols.push_back(i);
    return cols;
}

std::vector<std::uint32_t> complement_of(std::uint64_t y, std::uint32_t d) {
    std::vector<std::uint32_t> cols;
    for (std::uint32_t i = 0; i < d; ++i)
        if (!(y & (1ULL << i))) cols.push_back(i);
    return cols;
}

// t_size + 1 distinct weight-k words: y first, then the pool used for the
// in/out swap. Enumerate-and-shuffle for small B(d,k), rejection otherwise.
std::vector<std::uint64_t> distinct_weighted_words(std::uint32_t d, std::uint32_t k,
                                                   std::size_t count, Rng& rng) {
    const std::uint64_t space = binomial(d, k);
    if (count > space)
        throw std::invalid_argument("requested " + std::to_string(count) + " distinct words but B(" +
                                    std::to_string(d) + "," + std::to_string(k) + ") has only " +
                                    std::to_string(space));
    if (space <= 1'000'000) {
        Code all = enumerate_constant_weight(d, k);
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t j = i + uniform_below(rng, all.words.size() - i);
            std::swap(all.words[i], all.words[j]);
        }
        all.words.resize(count);
        return all.words;
    }
    std::set<std::uint64_t> seen;
    std::vector<std::uint64_t> out;
    std::vector<std::uint32_t> pos(d);
    const std::size_t budget = 1000 * count;
    for (std::size_t attempt = 0; attempt < budget && out.size() < count; ++attempt) {
        for (std::uint32_t i = 0; i < d; ++i) pos[i] = i;
        std::uint64_t mask = 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            const std::uint64_t j = i + uniform_below(rng, d - i);
            std::swap(pos[i], pos[j]);
            mask |= 1ULL << pos[i];
        }
        if (seen.insert(mask).second) out.push_back(mask);
    }
    if (out.size() < count) throw std::runtime_error("distinct word sampling budget exhausted");
    return out;
}

// y = words[0]; the returned T keeps |T| = t_size in both cases.
std::vector<std::uint64_t> pick_t(const std::vector<std::uint64_t>& words, std::size_t t_size,
                                  bool include_y) {
    std::vector<std::uint64_t> t;
    t.reserve(t_size);
    const std::size_t first = include_y ? 0 : 1;
    for (std::size_t i = first; i < first + t_size; ++i) t.push_back(words[i]);
    return t;
}

void verify_instance(const HardInstance& inst) {
    const double stat = oracle_statistic(inst);
    if (inst.case_in) {
        if (stat < inst.threshold_high)
            throw std::runtime_error("instance verification failed: statistic " + fmt_num(stat) +
                                     " below in-case bound " + fmt_num(inst.threshold_high));
    } else {
        if (stat > inst.threshold_low)
            throw std::runtime_error("instance verification failed: statistic " + fmt_num(stat) +
                                     " above out-case bound " + fmt_num(inst.threshold_low));
    }
}

HardInstance gen_f0_impl(std::uint32_t d, std::uint32_t k, std::uint32_t q, std::size_t t_size,
                         bool include_y, Rng& rng, bool verify, double sep_factor,
                         bool warn_no_sep) {
    if (d > 63) throw capacity_error("word length above 63 bits unsupported");
    if (k < 1 || k > d) throw std::invalid_argument("weight must lie in [1, d]");
    if (t_size < 1) throw std::invalid_argument("t_size must be >= 1");
    check_pattern_capacity(k, q);

    const auto words = distinct_weighted_words(d, k, t_size + 1, rng);
    const std::uint64_t y = words[0];
    const auto t = pick_t(words, t_size, include_y);

    HardInstance inst;
    inst.data = star_set(t, d, q);
    inst.query = ColumnQuery(support_of(y, d));
    inst.case_in = include_y;
    inst.problem = Problem::kF0;
    inst.statistic = Statistic::kDistinctCount;
    inst.threshold_high = std::pow(double(q), double(k));
    inst.threshold_low = double(k) * std::pow(double(q), double(k) - 1);
    inst.params = {{"d", std::to_string(d)},
                   {"k", std::to_string(k)},
                   {"q", std::to_string(q)},
                   {"t_size", std::to_string(t_size)},
                   {"sep_factor", fmt_num(sep_factor)}};
    if (warn_no_sep) inst.params.emplace_back("warning", "no separation");
    if (verify) verify_instance(inst);
    return inst;
}

}  // namespace

double oracle_statistic(const HardInstance& inst) {
    const FrequencyVector f = frequency_vector(inst.data, inst.query);
    switch (inst.statistic) {
        case Statistic::kDistinctCount:
            return moment(f, 0);
        case Statistic::kMoment:
            return moment(f, inst.p);
        case Statistic::kPointFrequency: {
            if (inst.witness.empty()) throw std::logic_error("point statistic needs a witness");
            auto it = f.counts.find(inst.witness.front());
            return it == f.counts.end() ? 0.0 : double(it->second);
        }
        case Statistic::kMassShare: {
            const double total = moment(f, inst.p);
            if (total == 0) return 0;
            double mass = 0;
            for (std::uint64_t id : inst.witness) {
                auto it = f.counts.find(id);
                if (it != f.counts.end()) mass += std::pow(double(it->second), inst.p);
            }
            return mass / total;
        }
    }
    throw std::logic_error("unknown statistic");
}

HardInstance gen_f0(std::uint32_t d, std::uint32_t k, std::uint32_t q, std::size_t t_size,
                    bool include_y, Rng& rng, bool verify) {
    if (2 * k > d) throw std::invalid_argument("requires k <= d/2");
    if (q <= k) throw std::invalid_argument("requires q > k");
    return gen_f0_impl(d, k, q, t_size, include_y, rng, verify, double(q) / double(k), false);
}

HardInstance gen_f0_center(std::uint32_t d, std::uint32_t q, std::size_t t_size,
                           bool include_y, Rng& rng, bool verify) {
    if (d % 2 != 0) throw std::invalid_argument("requires even d");
    const std::uint32_t k = d / 2;
    if (q < k) throw std::invalid_argument("requires q >= d/2");
    const double factor = 2.0 * double(q) / double(d);
    return gen_f0_impl(d, k, q, t_size, include_y, rng, verify, factor, factor <= 1.0);
}

std::uint32_t reduce_width(std::uint32_t q, std::uint32_t q_target) {
    std::uint32_t w = 1;
    std::uint64_t reach = q_target;
    while (reach < q) {
        reach *= q_target;
        ++w;
    }
    return w;
}

Dataset reduce_alphabet(const Dataset& a, std::uint32_t q_target) {
    if (q_target < 2 || q_target > a.alphabet())
        throw std::invalid_argument("q_target must lie in [2, q]");
    const std::uint32_t w = reduce_width(a.alphabet(), q_target);
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::vector<std::uint32_t> out;
        out.reserve(a.cols() * w);
        for (std::uint32_t sym : a.row(i)) {
            for (std::uint32_t j = w; j-- > 0;) {
                std::uint32_t digit = sym;
                for (std::uint32_t s = 0; s < j; ++s) digit /= q_target;
                out.push_back(digit % q_target);
            }
        }
        rows.push_back(std::move(out));
    }
    return Dataset::from_rows(rows, a.cols() * w, q_target);
}

ColumnQuery expand_query(const ColumnQuery& c, std::uint32_t width) {
    std::vector<std::uint32_t> cols;
    cols.reserve(c.size() * width);
    for (std::uint32_t j : c.columns())
        for (std::uint32_t s = 0; s < width; ++s) cols.push_back(j * width + s);
    return ColumnQuery(std::move(cols));
}

namespace {

HardInstance gen_hh_impl(std::uint32_t d, double eps, double gamma, std::size_t t_size,
                         bool include_y, Rng& rng, bool verify, std::uint32_t max_inter_cap) {
    if (t_size < 1) throw std::invalid_argument("t_size must be >= 1");
    const auto weight = static_cast<std::uint32_t>(std::floor(eps * d + 1e-9));
    const auto inter_floor = static_cast<std::uint32_t>(std::floor((eps * eps + gamma) * d + 1e-9));
    const std::uint32_t max_inter = std::min(inter_floor, max_inter_cap);
    if (weight < 1 || max_inter < 1)
        throw std::invalid_argument("floor(eps*d) and the intersection cap must be >= 1");
    if (weight >= d) throw std::invalid_argument("floor(eps*d) must be < d");

    const Code code = sample_code_with_bound(d, weight, max_inter, t_size + 1, rng);
    const std::uint64_t y = code.words[0];
    const auto t = pick_t(code.words, t_size, include_y);

    const Dataset stars = star_set(t, d, 2);
    std::vector<std::vector<std::uint32_t>> rows;
    const auto copies = static_cast<std::size_t>(1) << weight;  // 2^{floor(eps d)}
    rows.reserve(stars.rows() + copies);
    for (std::size_t i = 0; i < stars.rows(); ++i) {
        auto r = stars.row(i);
        rows.emplace_back(r.begin(), r.end());
    }
    rows.insert(rows.end(), copies, std::vector<std::uint32_t>(d, 1));

    HardInstance inst;
    inst.data = Dataset::from_rows(rows, d, 2);
    inst.query = ColumnQuery(complement_of(y, d));
    inst.case_in = include_y;
    inst.problem = Problem::kHH;
    inst.statistic = Statistic::kPointFrequency;
    inst.witness = {0};  // the all-zero pattern on the complement of supp(y)
    inst.threshold_high = std::exp2(double(weight));
    inst.threshold_low = double(t_size) * std::exp2(double(inter_floor));
    inst.params = {{"d", std::to_string(d)},
                   {"eps", fmt_num(eps)},
                   {"gamma", fmt_num(gamma)},
                   {"weight", std::to_string(weight)},
                   {"max_intersection", std::to_string(max_inter)},
                   {"t_size", std::to_string(t_size)}};
    if (verify) verify_instance(inst);
    return inst;
}

}  // namespace

HardInstance gen_hh(std::uint32_t d, double eps, double gamma, std::size_t t_size,
                    bool include_y, Rng& rng, bool verify) {
    return gen_hh_impl(d, eps, gamma, t_size, include_y, rng, verify, UINT32_MAX);
}

double eq8_bound(double p, double eps, double c, std::uint32_t d) {
    if (c <= 0 || c >= 1) throw std::invalid_argument("c must lie in (0,1)");
    const double a = 2.0 + std::log2(1.0 / c);
    const double exponent = c * d * p + eps * d * p + a * (1.0 - p) * c * d;
    return std::exp2(exponent) * std::pow(double(d), 1.0 - p);
}

HardInstance gen_fp(std::uint32_t d, double eps, double gamma, std::size_t t_size,
                    bool include_y, double p, Rng& rng, bool verify) {
    if (p == 1) throw std::invalid_argument("p = 1 admits no separation (F1 is the row count)");
    if (p > 1) {
        HardInstance inst = gen_hh(d, eps, gamma, t_size, include_y, rng, verify);
        inst.problem = Problem::kFP;
        inst.p = p;
        inst.params.emplace_back("p", fmt_num(p));
        return inst;
    }
    if (t_size < 1) throw std::invalid_argument("t_size must be >= 1");
    const auto weight = static_cast<std::uint32_t>(std::floor(eps * d + 1e-9));
    const auto inter_floor = static_cast<std::uint32_t>(std::floor((eps * eps + gamma) * d + 1e-9));
    if (weight < 1 || inter_floor < 1)
        throw std::invalid_argument("floor(eps*d) and floor((eps^2+gamma)*d) must be >= 1");
    const double c = double(inter_floor) / double(d);
    if (!(c < eps * (1.0 / p - 1.0)))
        throw std::invalid_argument("requires intersection fraction c < eps*(1/p - 1): c = " +
                                    fmt_num(c) + ", bound = " + fmt_num(eps * (1.0 / p - 1.0)));

    const Code code = sample_code_with_bound(d, weight, inter_floor, t_size + 1, rng);
    const std::uint64_t y = code.words[0];
    const auto t = pick_t(code.words, t_size, include_y);

    HardInstance inst;
    inst.data = star_set(t, d, 2);
    inst.query = ColumnQuery(support_of(y, d));
    inst.case_in = include_y;
    inst.problem = Problem::kFP;
    inst.statistic = Statistic::kMoment;
    inst.p = p;
    inst.threshold_high = std::exp2(double(weight));
    inst.threshold_low = eq8_bound(p, eps, c, d);
    inst.params = {{"d", std::to_string(d)},
                   {"eps", fmt_num(eps)},
                   {"gamma", fmt_num(gamma)},
                   {"p", fmt_num(p)},
                   {"weight", std::to_string(weight)},
                   {"max_intersection", std::to_string(inter_floor)},
                   {"c", fmt_num(c)},
                   {"t_size", std::to_string(t_size)}};
    if (verify) verify_instance(inst);
    return inst;
}

HardInstance gen_lpsample(std::uint32_t d, double eps, double gamma, std::size_t t_size,
                          bool include_y, double p, Rng& rng, bool verify) {
    if (p == 1) throw std::invalid_argument("p = 1 admits no separation (F1 is the row count)");
    if (p > 1) {
        HardInstance inst = gen_hh(d, eps, gamma, t_size, include_y, rng, verify);
        inst.problem = Problem::kLPSample;
        inst.p = p;
        inst.params.emplace_back("p", fmt_num(p));
        return inst;
    }
    if (t_size < 1) throw std::invalid_argument("t_size must be >= 1");
    const auto weight = static_cast<std::uint32_t>(std::floor(eps * d + 1e-9));
    if (weight < 2) throw std::invalid_argument("floor(eps*d) must be >= 2");
    const std::uint32_t min_support = (weight + 1) / 2;  // ceil(floor(eps d)/2)
    const auto inter_floor = static_cast<std::uint32_t>(std::floor((eps * eps + gamma) * d + 1e-9));
    // Tightened below min_support so out-case codewords cannot reach M'.
    const std::uint32_t max_inter = std::min(inter_floor, min_support - 1);
    if (max_inter < 1)
        throw std::invalid_argument("intersection cap min(floor((eps^2+gamma)d), "
                                    "ceil(floor(eps*d)/2)-1) must be >= 1");
    const double c = double(max_inter) / double(d);
    if (!(c < eps * (1.0 / p - 1.0)))
        throw std::invalid_argument("requires intersection fraction c < eps*(1/p - 1): c = " +
                                    fmt_num(c) + ", bound = " + fmt_num(eps * (1.0 / p - 1.0)));

    const Code code = sample_code_with_bound(d, weight, max_inter, t_size + 1, rng);
    const std::uint64_t y = code.words[0];
    const auto t = pick_t(code.words, t_size, include_y);

    HardInstance inst;
    inst.data = star_set(t, d, 2);
    inst.query = ColumnQuery(support_of(y, d));
    inst.case_in = include_y;
    inst.problem = Problem::kLPSample;
    inst.statistic = Statistic::kMassShare;
    inst.p = p;
    // M': patterns on supp(y) whose own support has size >= ceil(weight/2).
    for (std::uint64_t id = 0; id < (std::uint64_t(1) << weight); ++id)
        if (std::uint32_t(std::popcount(id)) >= min_support) inst.witness.push_back(id);
    inst.threshold_high = 0.20;
    inst.threshold_low = 0;
    inst.params = {{"d", std::to_string(d)},
                   {"eps", fmt_num(eps)},
                   {"gamma", fmt_num(gamma)},
                   {"p", fmt_num(p)},
                   {"weight", std::to_string(weight)},
                   {"max_intersection", std::to_string(max_inter)},
                   {"witness_size", std::to_string(inst.witness.size())},
                   {"additive_delta", "0"},
                   {"t_size", std::to_string(t_size)}};
    if (verify) verify_instance(inst);
    return inst;
}

void write_metadata(std::ostream& os, const HardInstance& inst) {
    os << "problem=" << problem_name(inst.problem) << "\n";
    os << "case=" << (inst.case_in ? "in" : "out") << "\n";
    for (const auto& [k, v] : inst.params) os << k << "=" << v << "\n";
    os << "threshold_low=" << fmt_num(inst.threshold_low) << "\n";
    os << "threshold_high=" << fmt_num(inst.threshold_high) << "\n";
    os << "query=" << inst.query.to_string() << "\n";
    os << "witness=";
    for (std::size_t i = 0; i < inst.witness.size(); ++i) {
        if (i) os << ",";
        os << inst.witness[i];
    }
    os << "\n";
}

}  // namespace subfreq
