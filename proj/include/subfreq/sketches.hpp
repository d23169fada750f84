#ifndef SUBFREQ_SKETCHES_HPP
#define SUBFREQ_SKETCHES_HPP

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "subfreq/rng.hpp"

namespace subfreq {

// Polynomial hash over the Mersenne prime 2^61-1. Degree 1 gives a pairwise
// independent family, degree 3 a 4-wise one (used for AMS signs).
class PolyHash {
public:
    static constexpr std::uint64_t kPrime = (1ULL << 61) - 1;

    PolyHash(Rng& rng, unsigned degree);

    std::uint64_t operator()(std::uint64_t x) const;

    // Hash mapped to [0,1).
    double unit(std::uint64_t x) const { return double((*this)(x)) / double(kPrime); }

    // Hash mapped to a +/-1 sign.
    int sign(std::uint64_t x) const { return ((*this)(x) & 1) ? 1 : -1; }

private:
    std::vector<std::uint64_t> coeffs_;  // highest degree first
};

/// Bottom-k distinct-count signature: keeps the k smallest values of a fixed
/// pairwise-independent hash into [0,1). With k = ceil(16/eps^2) the
/// estimate (k-1)/v_k is a (1+eps)-approximation to F0 with good probability;
/// below k distinct items the count is exact.
class BottomKSketch {
public:
    BottomKSketch(std::size_t k, std::uint64_t seed);

    void add(std::uint64_t item);
    double estimate() const;
    std::size_t k() const { return k_; }

    static std::size_t k_for_eps(double eps);

private:
    std::size_t k_;
    PolyHash hash_;
    std::set<double> smallest_;  // at most k distinct hash values
};

/// Sign-hash second-moment estimator: median of `reps` means of `cols`
/// squared sign-hash inner products. cols = ceil(8/eps^2),
/// reps = ceil(8*ln(1/fail_prob)).
class SignHashF2Sketch {
public:
    SignHashF2Sketch(double eps, double fail_prob, std::uint64_t seed);

    void add(std::uint64_t item, std::uint64_t count = 1);
    double estimate() const;

private:
    std::size_t cols_;
    std::size_t reps_;
    std::vector<PolyHash> hashes_;   // reps*cols sign hashes
    std::vector<double> counters_;   // reps*cols running inner products
};

}  // namespace subfreq

#endif
