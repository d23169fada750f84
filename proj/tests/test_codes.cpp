#include <doctest.h>

#include <bit>
#include <set>

#include "subfreq/codes.hpp"
#include "subfreq/oracle.hpp"

using namespace subfreq;

TEST_CASE("binomial") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(20, 10) == 184756);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(64, 32) == UINT64_MAX);  // saturated
}

TEST_CASE("constant-weight enumeration") {
    const Code c = enumerate_constant_weight(4, 2);
    CHECK(c.words.size() == 6);
    CHECK(c.max_intersection == 1);
    for (std::uint64_t w : c.words) CHECK(std::popcount(w) == 2);
    CHECK(std::set<std::uint64_t>(c.words.begin(), c.words.end()).size() == 6);

    const Code z = enumerate_constant_weight(3, 0);
    CHECK(z.words == std::vector<std::uint64_t>{0});
    CHECK(z.max_intersection == 0);

    const Code big = enumerate_constant_weight(20, 10);
    CHECK(big.words.size() == 184756);
    CHECK(double(big.words.size()) >= std::exp2(20) / std::sqrt(40.0));

    CHECK_THROWS_AS(enumerate_constant_weight(40, 20), capacity_error);
}

TEST_CASE("enumeration pairwise intersections stay below the weight") {
    for (std::uint32_t d = 2; d <= 10; ++d) {
        for (std::uint32_t k = 1; k <= d; ++k) {
            const Code c = enumerate_constant_weight(d, k);
            std::uint32_t worst = 0;
            for (std::size_t i = 0; i < c.words.size(); ++i)
                for (std::size_t j = i + 1; j < c.words.size(); ++j)
                    worst = std::max<std::uint32_t>(worst, std::popcount(c.words[i] & c.words[j]));
            REQUIRE(worst == c.max_intersection);
            if (c.words.size() > 1) REQUIRE(worst == k - 1);
        }
    }
}

TEST_CASE("bounded-intersection sampling") {
    Rng rng(15);
    const Code c = sample_random_code(16, 0.25, 0.125, 8, rng);
    CHECK(c.words.size() == 8);
    CHECK(c.weight == 4);
    for (std::uint64_t w : c.words) CHECK(std::popcount(w) == 4);
    for (std::size_t i = 0; i < c.words.size(); ++i)
        for (std::size_t j = i + 1; j < c.words.size(); ++j)
            REQUIRE(std::popcount(c.words[i] & c.words[j]) <= 3);
    CHECK(c.max_intersection <= 3);
}

TEST_CASE("single-word target is vacuously valid") {
    Rng rng(2);
    const Code c = sample_random_code(16, 0.25, 0.125, 1, rng);
    CHECK(c.words.size() == 1);
    CHECK(c.max_intersection == 0);
}

TEST_CASE("infeasible parameters exhaust the retry budget") {
    Rng rng(3);
    CHECK(lemma_code_size_cap(16, 0.01) == 1);
    CHECK_THROWS_WITH_AS(sample_random_code(16, 0.5, 0.01, 100, rng),
                         doctest::Contains("budget exhausted"), std::runtime_error);
}

TEST_CASE("code sampling is deterministic per seed") {
    Rng a(44), b(44);
    CHECK(sample_random_code(16, 0.25, 0.125, 8, a).words ==
          sample_random_code(16, 0.25, 0.125, 8, b).words);
}

TEST_CASE("star lifts a word over the alphabet") {
    // y = 1100 as a mask over columns {0,1}
    const auto words = star(0b0011, 4, 2);
    REQUIRE(words.size() == 4);
    CHECK(words[0] == std::vector<std::uint32_t>{0, 0, 0, 0});
    CHECK(words[3] == std::vector<std::uint32_t>{1, 1, 0, 0});

    CHECK(star(0, 4, 3) == std::vector<std::vector<std::uint32_t>>{{0, 0, 0, 0}});

    const auto t = star(0b0101, 4, 3);  // support {0, 2}
    REQUIRE(t.size() == 9);
    std::set<std::vector<std::uint32_t>> dedup(t.begin(), t.end());
    CHECK(dedup.size() == 9);
    for (const auto& w : t) {
        CHECK(w[1] == 0);
        CHECK(w[3] == 0);
    }
}

TEST_CASE("star size is exactly q to the weight") {
    for (std::uint32_t q : {2u, 3u}) {
        for (std::uint64_t y : {0b111ULL, 0b1010ULL, 0b11011ULL}) {
            const auto words = star(y, 5, q);
            double expect = std::pow(double(q), double(std::popcount(y)));
            CHECK(double(words.size()) == expect);
            CHECK(std::set<std::vector<std::uint32_t>>(words.begin(), words.end()).size() ==
                  words.size());
        }
    }
}

TEST_CASE("star union removes shared children") {
    const Dataset u = star_set({0b0011, 0b1100}, 4, 2);
    CHECK(u.rows() == 7);  // 4 + 4 with the all-zero word shared

    const Dataset single = star_set({0b0011}, 4, 2);
    CHECK(single.rows() == 4);

    const Dataset none = star_set({}, 4, 2);
    CHECK(none.rows() == 0);
}

TEST_CASE("star set size bound against brute force") {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const Code c = sample_code_with_bound(8, 3, 2, 4, rng);
        const Dataset u = star_set(c.words, 8, 2);
        std::set<std::uint64_t> ids;
        for (std::size_t i = 0; i < u.rows(); ++i) {
            auto r = u.row(i);
            ids.insert(encode_pattern(r, 2));
        }
        REQUIRE(ids.size() == u.rows());
        REQUIRE(u.rows() <= c.words.size() * 8);
    }
}

TEST_CASE("codes serialize as binary datasets") {
    const Code c = enumerate_constant_weight(4, 2);
    const Dataset ds = code_to_dataset(c);
    CHECK(ds.rows() == 6);
    CHECK(ds.cols() == 4);
    CHECK(ds.alphabet() == 2);
    // first word is {0,1} -> bits 0 and 1 set
    CHECK(ds.row(0)[0] == 1);
    CHECK(ds.row(0)[1] == 1);
    CHECK(ds.row(0)[2] == 0);
}

TEST_CASE("star capacity caps") {
    CHECK_THROWS_AS(star(0b1111111111, 10, 5, 100), capacity_error);
}
