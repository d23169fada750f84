#include <doctest.h>

#include <sstream>

#include "subfreq/codes.hpp"
#include "subfreq/hardgen.hpp"
#include "subfreq/oracle.hpp"

using namespace subfreq;

TEST_CASE("planted distinct-count instance, both cases") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rin(seed), rout(seed);
        const HardInstance in = gen_f0(8, 3, 4, 4, true, rin, true);
        const HardInstance out = gen_f0(8, 3, 4, 4, false, rout, true);
        CHECK(in.threshold_high == 64.0);   // q^k
        CHECK(in.threshold_low == 48.0);    // k*q^{k-1}
        CHECK(oracle_statistic(in) >= 64.0);
        CHECK(oracle_statistic(out) <= 48.0);
        CHECK(in.query.size() == 3);
        CHECK(in.data.alphabet() == 4);
    }
}

TEST_CASE("single-word in-case hits the exact count") {
    // T = {y}: the star set restricted to supp(y) is all q^k patterns.
    Rng rng(1);
    const HardInstance inst = gen_f0(4, 2, 3, 1, true, rng, true);
    CHECK(oracle_statistic(inst) == 9.0);
}

TEST_CASE("central-weight variant") {
    Rng r1(2), r2(3), r3(4);
    const HardInstance a = gen_f0_center(6, 9, 2, true, r1, true);
    bool has_sep = false;
    for (const auto& [k, v] : a.params)
        if (k == "sep_factor") { CHECK(v == "3"); has_sep = true; }
    CHECK(has_sep);

    const HardInstance b = gen_f0_center(8, 4, 2, true, r2, true);
    bool warned = false;
    for (const auto& [k, v] : b.params)
        if (k == "warning") warned = true;
    CHECK(warned);  // 2q/d = 1: no separation

    CHECK_THROWS(gen_f0_center(7, 9, 2, true, r3));
}

TEST_CASE("alphabet reduction digit expansion") {
    const Dataset a = Dataset::from_rows({{5, 0}, {8, 2}}, 2, 9);
    const Dataset b = reduce_alphabet(a, 3);
    CHECK(reduce_width(9, 3) == 2);
    CHECK(b.cols() == 4);
    CHECK(b.alphabet() == 3);
    CHECK(b.row(0)[0] == 1);  // 5 = 1*3 + 2
    CHECK(b.row(0)[1] == 2);
    CHECK(b.row(1)[0] == 2);  // 8 = 2*3 + 2
    CHECK(b.row(1)[1] == 2);
}

TEST_CASE("alphabet reduction at the same base is the identity") {
    const Dataset a = Dataset::from_rows({{0, 1}, {2, 1}}, 2, 3);
    const Dataset b = reduce_alphabet(a, 3);
    CHECK(b == a);
}

TEST_CASE("alphabet reduction preserves distinct counts on every query") {
    Rng rng(17);
    std::vector<std::uint32_t> cells(40 * 4);
    for (auto& c : cells) c = static_cast<std::uint32_t>(uniform_below(rng, 4));
    const Dataset a(40, 4, 4, std::move(cells));
    const Dataset b = reduce_alphabet(a, 2);
    const std::uint32_t w = reduce_width(4, 2);
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
        std::vector<std::uint32_t> cols;
        for (std::uint32_t i = 0; i < 4; ++i)
            if (mask & (1u << i)) cols.push_back(i);
        const ColumnQuery c(cols);
        REQUIRE(moment(frequency_vector(a, c), 0) ==
                moment(frequency_vector(b, expand_query(c, w)), 0));
    }
}

TEST_CASE("planted point-frequency instance") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rin(seed), rout(seed);
        const HardInstance in = gen_hh(16, 0.25, 0.125, 8, true, rin, true);
        const HardInstance out = gen_hh(16, 0.25, 0.125, 8, false, rout, true);
        CHECK(in.threshold_high == 16.0);  // 2^{floor(eps d)}
        CHECK(out.threshold_low == 64.0);  // |T| * 2^{floor((eps^2+gamma)d)}
        CHECK(oracle_statistic(in) >= 16.0);
        CHECK(oracle_statistic(out) <= 64.0);
        CHECK(in.witness == std::vector<std::uint64_t>{0});
        CHECK(in.query.size() == 12);  // complement of a weight-4 support
    }
}

TEST_CASE("all-ones block contributes its exact copy count") {
    // With T = {y}, only y's children restrict to the all-zero pattern on the
    // complement - plus nothing else - so the frequency is exactly 2^{eps d}
    // from the planted block... the ones rows themselves never project to 0_S.
    Rng rng(4);
    const HardInstance inst = gen_hh(16, 0.25, 0.125, 1, true, rng, true);
    CHECK(oracle_statistic(inst) == 16.0);
}

TEST_CASE("planted moment instance for p below one") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rin(seed), rout(seed);
        const HardInstance in = gen_fp(16, 0.25, 0.125, 8, true, 0.5, rin, true);
        const HardInstance out = gen_fp(16, 0.25, 0.125, 8, false, 0.5, rout, true);
        CHECK(in.threshold_high == 16.0);
        CHECK(oracle_statistic(in) >= 16.0);
        CHECK(oracle_statistic(out) <= out.threshold_low);
    }
}

TEST_CASE("moment instance parameter check names the inequality") {
    Rng rng(1);
    // eps=0.25, p=0.8: bound eps*(1/p-1) = 0.0625 but c = 3/16 = 0.1875.
    CHECK_THROWS_WITH_AS(gen_fp(16, 0.25, 0.125, 4, true, 0.8, rng),
                         doctest::Contains("c < eps*(1/p - 1)"), std::invalid_argument);
}

TEST_CASE("moment instance above p=1 reuses the point-frequency construction") {
    Rng r1(9), r2(9);
    const HardInstance fp = gen_fp(16, 0.25, 0.125, 8, true, 2, r1);
    const HardInstance hh = gen_hh(16, 0.25, 0.125, 8, true, r2);
    CHECK(fp.data == hh.data);
    CHECK(fp.query == hh.query);
    CHECK(fp.problem == Problem::kFP);
    CHECK(fp.p == 2.0);
}

TEST_CASE("planted sampling instance") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rin(seed), rout(seed);
        const HardInstance in = gen_lpsample(16, 0.25, 0.125, 8, true, 0.5, rin, true);
        const HardInstance out = gen_lpsample(16, 0.25, 0.125, 8, false, 0.5, rout, true);
        CHECK(in.witness.size() == 11);  // weight-4 patterns with support >= 2
        CHECK(in.witness.size() >= 8);   // at least 2^{floor(eps d) - 1}
        CHECK(oracle_statistic(in) >= 0.20);
        CHECK(oracle_statistic(out) == 0.0);
    }
}

TEST_CASE("sampler hits the witness set at the predicted rate") {
    Rng gen_rng(3);
    const HardInstance in = gen_lpsample(16, 0.25, 0.125, 8, true, 0.5, gen_rng, true);
    const FrequencyVector f = frequency_vector(in.data, in.query);
    const std::set<std::uint64_t> witness(in.witness.begin(), in.witness.end());
    Rng draw_rng(123);
    std::size_t hits = 0;
    const std::size_t draws = 10000;
    for (std::size_t i = 0; i < draws; ++i)
        if (witness.count(lp_sample(f, 0.5, draw_rng).first)) ++hits;
    CHECK(double(hits) / double(draws) >= 0.20);
}

TEST_CASE("out-case moment bound formula") {
    // 2^{cdp + eps d p + (2 + log2(1/c)) (1-p) c d} * d^{1-p}
    const double v = eq8_bound(0.5, 0.25, 0.1875, 16);
    const double exponent = 0.1875 * 16 * 0.5 + 0.25 * 16 * 0.5 +
                            (2 + std::log2(1 / 0.1875)) * 0.5 * 0.1875 * 16;
    CHECK(v == doctest::Approx(std::exp2(exponent) * std::pow(16.0, 0.5)));
    CHECK_THROWS(eq8_bound(0.5, 0.25, 0.0, 16));
}

TEST_CASE("metadata serialization") {
    Rng rng(1);
    const HardInstance inst = gen_f0(4, 2, 3, 1, true, rng, true);
    std::ostringstream os;
    write_metadata(os, inst);
    const std::string text = os.str();
    CHECK(text.find("problem=f0\n") != std::string::npos);
    CHECK(text.find("case=in\n") != std::string::npos);
    CHECK(text.find("threshold_high=9\n") != std::string::npos);
    CHECK(text.find("threshold_low=6\n") != std::string::npos);
    CHECK(text.find("sep_factor=1.5\n") != std::string::npos);
    CHECK(text.find("query=") != std::string::npos);
}

TEST_CASE("sampling instance above p=1 reuses the point-frequency construction") {
    Rng r1(9), r2(9);
    const HardInstance lp = gen_lpsample(16, 0.25, 0.125, 8, true, 2, r1);
    const HardInstance hh = gen_hh(16, 0.25, 0.125, 8, true, r2);
    CHECK(lp.data == hh.data);
    CHECK(lp.witness == std::vector<std::uint64_t>{0});
    CHECK(lp.problem == Problem::kLPSample);
}
