#include "subfreq/netsketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "subfreq/codes.hpp"
#include "subfreq/oracle.hpp"

namespace subfreq {

double binary_entropy(double x) {
    if (x < 0 || x > 1) throw std::invalid_argument("entropy argument must lie in [0,1]");
    if (x == 0 || x == 1) return 0;
    return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

namespace {

constexpr double kEps = 1e-9;

std::uint32_t net_lo(std::uint32_t d, double alpha) {
    return static_cast<std::uint32_t>(std::floor(d * (0.5 - alpha) + kEps));
}

std::uint32_t net_hi(std::uint32_t d, double alpha) {
    return static_cast<std::uint32_t>(std::ceil(d * (0.5 + alpha) - kEps));
}

}  // namespace

AlphaNet build_net(std::uint32_t d, double alpha, std::size_t cap) {
    if (d < 2) throw std::invalid_argument("net requires d >= 2");
    if (alpha <= 0 || alpha >= 0.5) throw std::invalid_argument("alpha must lie in (0, 1/2)");
    if (d > 31) throw capacity_error("net enumeration supports d <= 31");

    AlphaNet net;
    net.d = d;
    net.alpha = alpha;
    net.lo = net_lo(d, alpha);
    net.hi = net_hi(d, alpha);

    std::uint64_t size = 0;
    for (std::uint32_t s = 0; s <= d; ++s)
        if (net.contains_size(s)) size += binomial(d, s);
    if (size > cap)
        throw capacity_error("alpha-net has " + std::to_string(size) +
                             " members, above cap " + std::to_string(cap));

    net.members.reserve(size);
    std::vector<std::uint32_t> idx;
    for (std::uint32_t s = 0; s <= d; ++s) {
        if (!net.contains_size(s)) continue;
        idx.resize(s);
        for (std::uint32_t i = 0; i < s; ++i) idx[i] = i;
        bool more = true;
        while (more) {
            std::uint32_t mask = 0;
            for (std::uint32_t i : idx) mask |= 1u << i;
            net.members.push_back(mask);
            more = false;
            for (std::size_t i = s; i-- > 0;) {
                if (idx[i] != i + d - s) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
                    more = true;
                    break;
                }
            }
        }
    }
    net.index.reserve(net.members.size());
    for (std::size_t i = 0; i < net.members.size(); ++i) net.index.emplace(net.members[i], i);
    return net;
}

namespace {

std::uint32_t query_mask(const ColumnQuery& c) {
    std::uint32_t mask = 0;
    for (std::uint32_t j : c.columns()) mask |= 1u << j;
    return mask;
}

ColumnQuery mask_query(std::uint32_t mask, std::uint32_t d) {
    std::vector<std::uint32_t> cols;
    for (std::uint32_t i = 0; i < d; ++i)
        if (mask & (1u << i)) cols.push_back(i);
    return ColumnQuery(std::move(cols));
}

}  // namespace

ColumnQuery round_query(const AlphaNet& net, const ColumnQuery& c) {
    if (c.size() > 0 && c.max_index() >= net.d)
        throw std::invalid_argument("query index out of range for net dimension");
    if (net.contains_size(c.size())) return c;

    std::vector<std::uint32_t> cols = c.columns();
    if (2 * cols.size() <= net.d) {
        cols.resize(net.lo);  // drop the largest indices
    } else {
        std::uint32_t next = 0;
        std::size_t pos = 0;
        while (cols.size() < net.hi) {  // add the smallest absent indices
            while (pos < cols.size() && cols[pos] == next) {
                ++pos;
                ++next;
            }
            cols.insert(cols.begin() + pos, next);
            ++pos;
            ++next;
        }
    }
    return ColumnQuery(std::move(cols));
}

std::uint32_t net_shift(std::uint32_t d, double alpha) {
    const std::uint32_t lo = net_lo(d, alpha);
    const std::uint32_t hi = net_hi(d, alpha);
    if (hi <= lo + 1) return 0;  // no query falls outside the net
    const std::uint32_t max_down = d / 2 - lo;
    const std::uint32_t max_up = hi - (d / 2 + 1);
    return std::max(max_down, max_up);
}

double rounding_distortion(double p, double alpha, std::uint32_t d) {
    if (p < 0) throw std::invalid_argument("p must be >= 0");
    const double m = net_shift(d, alpha);
    if (p == 1) return 1;
    if (p == 0) return std::exp2(m);
    if (p > 1) return std::exp2(m * (p - 1));
    return std::exp2(m * (1 - p));
}

SketchSpec make_sketch_spec(SketchKind kind, double eps, double delta_total,
                            std::size_t net_size) {
    SketchSpec spec;
    spec.kind = kind;
    spec.eps = eps;
    if (kind == SketchKind::kExact) {
        spec.beta = 1.0;
        spec.fail_prob = 0.0;
    } else {
        spec.beta = 1.0 + eps;
        spec.fail_prob = delta_total / double(net_size ? net_size : 1);
    }
    return spec;
}

SketchNet build_sketchnet(const Dataset& a, AlphaNet net, SketchSpec spec, double p,
                          std::uint64_t seed) {
    if (a.cols() != net.d) throw std::invalid_argument("dataset dimension does not match net");
    if (spec.kind == SketchKind::kBottomK && p != 0)
        throw std::invalid_argument("bottom-k sketches answer F0 only");
    if (spec.kind == SketchKind::kSignHash && p != 2)
        throw std::invalid_argument("sign-hash sketches answer F2 only");

    SketchNet snet;
    snet.net = std::move(net);
    snet.spec = spec;
    snet.p = p;
    snet.seed = seed;
    snet.n_rows = a.rows();
    snet.q = a.alphabet();
    snet.sketches.reserve(snet.net.members.size());

    for (std::size_t m = 0; m < snet.net.members.size(); ++m) {
        const std::uint32_t mask = snet.net.members[m];
        const ColumnQuery cols = mask_query(mask, snet.net.d);
        check_pattern_capacity(cols.size(), a.alphabet());

        MemberSketch sk;
        const std::uint64_t sk_seed = child_seed(seed, m);
        switch (spec.kind) {
            case SketchKind::kExact:
                sk.state = std::map<std::uint64_t, std::uint64_t>{};
                break;
            case SketchKind::kBottomK:
                sk.state = BottomKSketch(BottomKSketch::k_for_eps(spec.eps), sk_seed);
                break;
            case SketchKind::kSignHash:
                sk.state = SignHashF2Sketch(spec.eps, spec.fail_prob > 0 ? spec.fail_prob : 0.05,
                                            sk_seed);
                break;
        }

        const std::uint32_t q = a.alphabet();
        for (std::size_t i = 0; i < a.rows(); ++i) {
            auto r = a.row(i);
            std::uint64_t id = 0;
            for (std::uint32_t j : cols.columns()) id = id * q + r[j];
            std::visit([&](auto& state) {
                using T = std::decay_t<decltype(state)>;
                if constexpr (std::is_same_v<T, std::map<std::uint64_t, std::uint64_t>>) {
                    ++state[id];
                } else if constexpr (std::is_same_v<T, BottomKSketch>) {
                    state.add(id);
                } else {
                    state.add(id);
                }
            }, sk.state);
        }
        snet.sketches.push_back(std::move(sk));
    }
    return snet;
}

namespace {

double sketch_estimate(const MemberSketch& sk, double p, std::size_t pattern_len,
                       std::uint32_t q) {
    return std::visit([&](const auto& state) -> double {
        using T = std::decay_t<decltype(state)>;
        if constexpr (std::is_same_v<T, std::map<std::uint64_t, std::uint64_t>>) {
            FrequencyVector f;
            f.counts = state;
            f.pattern_len = pattern_len;
            f.q = q;
            for (const auto& [id, c] : state) f.total += c;
            return moment(f, p);
        } else if constexpr (std::is_same_v<T, BottomKSketch>) {
            return state.estimate();
        } else {
            return state.estimate();
        }
    }, sk.state);
}

}  // namespace

QueryResult query(const SketchNet& snet, const ColumnQuery& c) {
    QueryResult res;
    if (snet.p == 1) {  // F1 is the row count regardless of the query
        res.estimate = double(snet.n_rows);
        res.used_subset = c;
        res.beta = 1;
        res.distortion = 1;
        return res;
    }
    const ColumnQuery rounded = round_query(snet.net, c);
    const std::size_t idx = snet.net.index_of(query_mask(rounded));
    if (idx >= snet.sketches.size())
        throw std::logic_error("rounded query is not a net member");
    res.estimate = sketch_estimate(snet.sketches[idx], snet.p, rounded.size(), snet.q);
    res.used_subset = rounded;
    res.beta = snet.spec.beta;
    res.distortion = (rounded == c) ? 1.0 : rounding_distortion(snet.p, snet.net.alpha, snet.net.d);
    return res;
}

double query_exact_moment(const SketchNet& snet, const ColumnQuery& c, double p) {
    if (snet.spec.kind != SketchKind::kExact)
        throw std::invalid_argument("query_exact_moment requires an exact sketch net");
    if (p == 1) return double(snet.n_rows);
    const ColumnQuery rounded = round_query(snet.net, c);
    const std::size_t idx = snet.net.index_of(query_mask(rounded));
    if (idx >= snet.sketches.size())
        throw std::logic_error("rounded query is not a net member");
    return sketch_estimate(snet.sketches[idx], p, rounded.size(), snet.q);
}

std::vector<TradeoffRow> tradeoff_table(std::uint32_t d, const std::vector<double>& alphas) {
    std::vector<TradeoffRow> rows;
    rows.reserve(alphas.size());
    for (double a : alphas) {
        if (a <= 0 || a >= 0.5) throw std::invalid_argument("alpha must lie in (0, 1/2)");
        TradeoffRow row;
        row.alpha = a;
        row.relative_space = std::exp2((binary_entropy(0.5 - a) - 1.0) * double(d));
        row.approx_factor = std::exp2(a * double(d));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace subfreq
