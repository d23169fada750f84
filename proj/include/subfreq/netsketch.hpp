#ifndef SUBFREQ_NETSKETCH_HPP
#define SUBFREQ_NETSKETCH_HPP

#include <cstdint>
#include <map>
#include <unordered_map>
#include <variant>
#include <vector>

#include "subfreq/dataset.hpp"
#include "subfreq/sketches.hpp"

namespace subfreq {

inline constexpr std::size_t kDefaultNetCap = std::size_t(1) << 21;

// Binary entropy -x log2 x - (1-x) log2 (1-x), with H(0) = H(1) = 0.
double binary_entropy(double x);

/// All column subsets of size <= lo or >= hi, where lo = floor(d/2 - alpha*d)
/// and hi = ceil(d/2 + alpha*d). Members are bitmasks enumerated by size,
/// then lexicographically by index set.
struct AlphaNet {
    std::uint32_t d = 0;
    double alpha = 0;
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
    std::vector<std::uint32_t> members;
    std::unordered_map<std::uint32_t, std::size_t> index;  // mask -> position

    bool contains_size(std::size_t s) const { return s <= lo || s >= hi; }
    // Index of a member mask; members.size() if absent.
    std::size_t index_of(std::uint32_t mask) const {
        auto it = index.find(mask);
        return it == index.end() ? members.size() : it->second;
    }
};

AlphaNet build_net(std::uint32_t d, double alpha, std::size_t cap = kDefaultNetCap);

// Rounds a query to a net member: unchanged if already in the net; otherwise
// drops the largest indices down to size lo (when 2|C| <= d) or adds the
// smallest absent indices up to size hi. The result is always a subset or
// superset of c.
ColumnQuery round_query(const AlphaNet& net, const ColumnQuery& c);

// Worst-case |C delta C'| over queries rounded by the (d, alpha) net.
std::uint32_t net_shift(std::uint32_t d, double alpha);

// Multiplicative error of answering on the rounded query: 2^{m} for p=0,
// 2^{m(p-1)} for p>1, 2^{m(1-p)} for p<1, 1 for p=1, with m = net_shift.
double rounding_distortion(double p, double alpha, std::uint32_t d);

enum class SketchKind { kExact, kBottomK, kSignHash };

struct SketchSpec {
    SketchKind kind = SketchKind::kExact;
    double beta = 1.0;       // approximation factor; 1+eps for the randomized kinds
    double fail_prob = 0.0;  // per-sketch failure probability
    double eps = 0.5;        // accuracy knob for the randomized kinds
};

// Per-sketch failure probability delta_total/|N| (union bound over the net).
SketchSpec make_sketch_spec(SketchKind kind, double eps, double delta_total,
                            std::size_t net_size);

struct MemberSketch {
    std::variant<std::map<std::uint64_t, std::uint64_t>,  // exact counts
                 BottomKSketch, SignHashF2Sketch>
        state;
};

struct SketchNet {
    AlphaNet net;
    SketchSpec spec;
    double p = 0;
    std::uint64_t seed = 0;
    std::size_t n_rows = 0;
    std::uint32_t q = 2;
    std::vector<MemberSketch> sketches;  // one per net member, same order
};

SketchNet build_sketchnet(const Dataset& a, AlphaNet net, SketchSpec spec, double p,
                          std::uint64_t seed);

struct QueryResult {
    double estimate = 0;
    ColumnQuery used_subset;
    double beta = 1;
    double distortion = 1;
};

QueryResult query(const SketchNet& snet, const ColumnQuery& c);

// Exact-sketch moment for an arbitrary p; used where one exact net serves
// several moment orders.
double query_exact_moment(const SketchNet& snet, const ColumnQuery& c, double p);

struct TradeoffRow {
    double alpha = 0;
    double relative_space = 0;  // 2^{H(1/2-alpha)d} / 2^d
    double approx_factor = 0;   // 2^{alpha d}
};

std::vector<TradeoffRow> tradeoff_table(std::uint32_t d, const std::vector<double>& alphas);

}  // namespace subfreq

#endif
