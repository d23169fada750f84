#include "subfreq/sketches.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subfreq {

PolyHash::PolyHash(Rng& rng, unsigned degree) {
    coeffs_.resize(degree + 1);
    for (auto& c : coeffs_) c = uniform_below(rng, kPrime);
    if (coeffs_.front() == 0) coeffs_.front() = 1;  // keep the leading term
}

std::uint64_t PolyHash::operator()(std::uint64_t x) const {
    const unsigned __int128 p = kPrime;
    unsigned __int128 acc = 0;
    const std::uint64_t xm = x % kPrime;
    for (std::uint64_t c : coeffs_) {
        acc = acc * xm + c;
        acc = (acc >> 61) + (acc & p);  // fold: a*2^61 + b == a + b (mod p)
    }
    std::uint64_t r = std::uint64_t(acc);
    while (r >= kPrime) r -= kPrime;
    return r;
}

BottomKSketch::BottomKSketch(std::size_t k, std::uint64_t seed) : k_(k), hash_([&] {
        Rng rng(seed);
        return PolyHash(rng, 1);
    }()) {
    if (k < 2) throw std::invalid_argument("bottom-k sketch requires k >= 2");
}

std::size_t BottomKSketch::k_for_eps(double eps) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    return static_cast<std::size_t>(std::ceil(16.0 / (eps * eps)));
}

void BottomKSketch::add(std::uint64_t item) {
    const double h = hash_.unit(item);
    if (smallest_.size() < k_) {
        smallest_.insert(h);
    } else if (h < *smallest_.rbegin()) {
        smallest_.insert(h);
        if (smallest_.size() > k_) smallest_.erase(std::prev(smallest_.end()));
    }
}

double BottomKSketch::estimate() const {
    if (smallest_.size() < k_) return double(smallest_.size());
    return double(k_ - 1) / *smallest_.rbegin();
}

SignHashF2Sketch::SignHashF2Sketch(double eps, double fail_prob, std::uint64_t seed) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    if (fail_prob <= 0 || fail_prob >= 1)
        throw std::invalid_argument("fail_prob must lie in (0,1)");
    cols_ = static_cast<std::size_t>(std::ceil(8.0 / (eps * eps)));
    reps_ = static_cast<std::size_t>(std::ceil(8.0 * std::log(1.0 / fail_prob)));
    if (reps_ < 1) reps_ = 1;
    Rng rng(seed);
    hashes_.reserve(reps_ * cols_);
    for (std::size_t i = 0; i < reps_ * cols_; ++i) hashes_.emplace_back(rng, 3);
    counters_.assign(reps_ * cols_, 0.0);
}

void SignHashF2Sketch::add(std::uint64_t item, std::uint64_t count) {
    for (std::size_t i = 0; i < counters_.size(); ++i)
        counters_[i] += double(hashes_[i].sign(item)) * double(count);
}

double SignHashF2Sketch::estimate() const {
    std::vector<double> means(reps_);
    for (std::size_t r = 0; r < reps_; ++r) {
        double sum = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            const double v = counters_[r * cols_ + c];
            sum += v * v;
        }
        means[r] = sum / double(cols_);
    }
    std::sort(means.begin(), means.end());
    const std::size_t mid = reps_ / 2;
    return (reps_ % 2) ? means[mid] : 0.5 * (means[mid - 1] + means[mid]);
}

}  // namespace subfreq
