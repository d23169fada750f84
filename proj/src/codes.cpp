#include "subfreq/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace subfreq {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t q = n - k + i;
        if (r > std::uint64_t(-1) / q) return std::uint64_t(-1);
        r = r * q / i;  // product of i consecutive integers is divisible by i!
    }
    return r;
}

namespace {

std::uint32_t exact_max_intersection(const std::vector<std::uint64_t>& words) {
    std::uint32_t best = 0;
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j)
            best = std::max<std::uint32_t>(best, std::popcount(words[i] & words[j]));
    return best;
}

std::uint64_t random_weighted_word(std::uint32_t d, std::uint32_t k, Rng& rng) {
    // Partial Fisher-Yates over positions.
    std::vector<std::uint32_t> pos(d);
    for (std::uint32_t i = 0; i < d; ++i) pos[i] = i;
    std::uint64_t mask = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
        const std::uint64_t j = i + uniform_below(rng, d - i);
        std::swap(pos[i], pos[j]);
        mask |= 1ULL << pos[i];
    }
    return mask;
}

}  // namespace

Code enumerate_constant_weight(std::uint32_t d, std::uint32_t k, std::uint64_t cap) {
    if (d > 63) throw capacity_error("code length above 63 bits unsupported");
    if (k > d) throw std::invalid_argument("weight exceeds length");
    const std::uint64_t count = binomial(d, k);
    if (count > cap)
        throw capacity_error("C(" + std::to_string(d) + "," + std::to_string(k) + ") = " +
                             std::to_string(count) + " exceeds enumeration cap " +
                             std::to_string(cap));
    Code code;
    code.length = d;
    code.weight = k;
    code.words.reserve(count);
    std::vector<std::uint32_t> idx(k);
    for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
    bool more = true;
    while (more) {
        std::uint64_t mask = 0;
        for (std::uint32_t i : idx) mask |= 1ULL << i;
        code.words.push_back(mask);
        // advance to the next lexicographic k-combination of [d]
        more = false;
        for (std::size_t i = k; i-- > 0;) {
            if (idx[i] != i + d - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                more = true;
                break;
            }
        }
    }
    // Any two distinct weight-k words share at most k-1 ones, and some pair
    // attains it whenever the code has more than one word.
    code.max_intersection = (code.words.size() > 1) ? k - 1 : 0;
    return code;
}

Code sample_code_with_bound(std::uint32_t d, std::uint32_t weight, std::uint32_t max_inter,
                            std::size_t target_size, Rng& rng) {
    if (d > 63) throw capacity_error("code length above 63 bits unsupported");
    if (weight > d) throw std::invalid_argument("weight exceeds length");
    Code code;
    code.length = d;
    code.weight = weight;
    const std::size_t budget = 100 * target_size;
    for (std::size_t attempt = 0; attempt < budget && code.words.size() < target_size; ++attempt) {
        const std::uint64_t w = random_weighted_word(d, weight, rng);
        bool ok = true;
        for (std::uint64_t kept : code.words) {
            if (kept == w || std::uint32_t(std::popcount(kept & w)) > max_inter) {
                ok = false;
                break;
            }
        }
        if (ok) code.words.push_back(w);
    }
    if (code.words.size() < target_size)
        throw std::runtime_error("code sampling retry budget exhausted: achieved " +
                                 std::to_string(code.words.size()) + " of " +
                                 std::to_string(target_size) + " words (parameters outside the "
                                 "high-probability regime)");
    code.max_intersection = exact_max_intersection(code.words);
    return code;
}

std::uint64_t lemma_code_size_cap(std::uint32_t d, double gamma) {
    return static_cast<std::uint64_t>(std::floor(std::exp2(gamma * gamma * d / std::log(2.0))));
}

Code sample_random_code(std::uint32_t d, double eps, double gamma, std::size_t target_size,
                        Rng& rng) {
    if (eps <= 0 || eps >= 1 || gamma <= 0 || gamma >= 1)
        throw std::invalid_argument("eps and gamma must lie in (0,1)");
    const auto weight = static_cast<std::uint32_t>(std::floor(eps * d + 1e-9));
    const auto max_inter = static_cast<std::uint32_t>(std::floor((eps * eps + gamma) * d + 1e-9));
    if (weight < 1 || max_inter < 1)
        throw std::invalid_argument("floor(eps*d) and floor((eps^2+gamma)*d) must be >= 1");
    return sample_code_with_bound(d, weight, max_inter, target_size, rng);
}

std::vector<std::vector<std::uint32_t>> star(std::uint64_t y, std::uint32_t d, std::uint32_t q,
                                             std::uint64_t cap) {
    if (d > 63) throw capacity_error("word length above 63 bits unsupported");
    std::vector<std::uint32_t> support;
    for (std::uint32_t i = 0; i < d; ++i)
        if (y & (1ULL << i)) support.push_back(i);
    const std::uint32_t k = support.size();

    double size = std::pow(double(q), double(k));
    if (size > double(cap))
        throw capacity_error("star output size q^k = " + std::to_string(size) +
                             " exceeds cap " + std::to_string(cap));
    const auto count = static_cast<std::uint64_t>(std::llround(size));

    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(count);
    for (std::uint64_t id = 0; id < count; ++id) {
        std::vector<std::uint32_t> word(d, 0);
        std::uint64_t rest = id;
        for (std::uint32_t i = k; i-- > 0;) {
            word[support[i]] = static_cast<std::uint32_t>(rest % q);
            rest /= q;
        }
        out.push_back(std::move(word));
    }
    return out;
}

Dataset star_set(const std::vector<std::uint64_t>& words, std::uint32_t d, std::uint32_t q,
                 std::uint64_t cap) {
    std::uint64_t budget = cap;
    std::set<std::vector<std::uint32_t>> rows;
    for (std::uint64_t y : words) {
        for (auto& w : star(y, d, q, budget)) rows.insert(std::move(w));
        if (rows.size() > cap) throw capacity_error("star_set union exceeds cap");
    }
    std::vector<std::vector<std::uint32_t>> ordered(rows.begin(), rows.end());
    return Dataset::from_rows(ordered, d, q);
}

Dataset code_to_dataset(const Code& code) {
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(code.words.size());
    for (std::uint64_t w : code.words) {
        std::vector<std::uint32_t> row(code.length);
        for (std::uint32_t i = 0; i < code.length; ++i) row[i] = (w >> i) & 1;
        rows.push_back(std::move(row));
    }
    return Dataset::from_rows(rows, code.length, 2);
}

}  // namespace subfreq
