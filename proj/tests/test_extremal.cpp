#include <cmath>
#include <set>

#include "doctest.h"
#include "gcdlab/extremal.hpp"
#include "gcdlab/special.hpp"

using namespace gcdlab;

TEST_CASE("th1 first blocks") {
    auto c = th1_blocks(0.75, 0.1, 3);
    CHECK(c.eta == doctest::Approx((1.0 - 0.2) / 1.1));

    REQUIRE(c.blocks.size() == 3);
    const auto& b1 = c.blocks[0];
    REQUIRE(b1.size() == 2);
    CHECK(b1.values[0].to_u64() == 4);
    CHECK(b1.values[1].to_u64() == 8);

    const auto& b2 = c.blocks[1];
    REQUIRE(b2.size() == 4);
    std::multiset<u64> got;
    for (const auto& v : b2.values) got.insert(v.to_u64());
    CHECK(got == std::multiset<u64>{16, 32, 48, 96});

    CHECK_THROWS_AS(th1_blocks(0.75, 0.1, 21), std::length_error);
    CHECK_THROWS_AS(th1_blocks(0.75, 1.5, 3), std::invalid_argument);
}

TEST_CASE("th1 blocks are pairwise disjoint via 2-adic valuations") {
    auto c = th1_blocks(0.6, 0.2, 8);
    std::set<std::string> seen;
    for (const auto& b : c.blocks) {
        for (const auto& v : b.values) {
            auto [it, fresh] = seen.insert(v.to_string());
            CHECK(fresh);
        }
    }
    // valuations 2i and 2i+1 only
    for (const auto& b : c.blocks) {
        for (std::size_t mask = 0; mask < b.size(); ++mask) {
            int v2 = b.two_exponent + ((mask & 1) ? 1 : 0);  // p_1 = 2 is bit 0
            CHECK((v2 == 2 * b.index || v2 == 2 * b.index + 1));
        }
    }
}

TEST_CASE("th1 weyl-weighted mass telescopes to i^-2") {
    auto c = th1_blocks(0.75, 0.1, 12);
    for (const auto& b : c.blocks) {
        double mass = th1_block_weyl_mass(c, b);
        double expect = 1.0 / ((double)b.index * (double)b.index);
        CHECK(mass == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("block gcd identity: direct equals closed") {
    for (double alpha : {0.6, 0.75, 0.9}) {
        auto c = th1_blocks(alpha, 0.1, 10);
        // i = 1: 2 (1 + 2^-a)
        auto s1 = block_gcd_identity(c.blocks[0], alpha);
        CHECK(s1.closed == doctest::Approx(2.0 * (1.0 + std::pow(2.0, -alpha))).epsilon(1e-15));
        CHECK(s1.direct == doctest::Approx(s1.closed).epsilon(1e-13));
        // i = 2: 4 (1 + 2^-a)(1 + 3^-a)
        auto s2 = block_gcd_identity(c.blocks[1], alpha);
        CHECK(s2.closed ==
              doctest::Approx(4.0 * (1.0 + std::pow(2.0, -alpha)) *
                              (1.0 + std::pow(3.0, -alpha))).epsilon(1e-15));
        for (const auto& b : c.blocks) {
            auto s = block_gcd_identity(b, alpha);
            CHECK(std::fabs(s.direct - s.closed) / s.closed < 1e-12);
        }
    }
}

TEST_CASE("tensor quadratic form agrees with the pairwise sum") {
    auto c = th1_blocks(0.75, 0.1, 8);
    for (const auto& b : c.blocks) {
        // direct pairwise evaluation with the same per-element coefficients
        double direct = 0.0;
        for (std::size_t u = 0; u < b.size(); ++u) {
            for (std::size_t v = 0; v < b.size(); ++v) {
                double lg = 0.0;
                std::size_t diff = u ^ v;
                for (std::size_t r = 0; r < b.primes.size(); ++r)
                    if (diff >> r & 1) lg -= 0.75 * std::log((double)b.primes[r]);
                direct += b.coeffs[u] * b.coeffs[v] * std::exp(lg);
            }
        }
        CHECK(block_quadratic_form(b, 0.75) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("th2 schedule basics at alpha 0.75") {
    double delta = th2_default_delta(0.75);
    CHECK(delta == doctest::Approx(1.0));
    double beta = th2_default_beta(delta);
    CHECK(beta == doctest::Approx(0.3));
    auto c = th2_construction(0.75, beta, 3.0, 6, delta);
    CHECK(c.eta == doctest::Approx(24.0));

    CHECK(c.A[1] == 1);
    CHECK(c.S[1] == 2);
    CHECK(c.T[1] == 3);  // S_1 + ceil(log2 2)
    CHECK(c.S[2] == 27);  // T_1 + ceil(eta * max(1, log2 1)) = 3 + 24

    const auto& b1 = c.blocks[0];
    REQUIRE(b1.size() == 2);
    CHECK(b1.values[0].to_u64() == 4);
    CHECK(b1.values[1].to_u64() == 8);

    // gap growth, size window, divisibility, disjoint intervals
    for (int i = 1; i <= c.i_max; ++i) {
        CHECK((double)(c.S[i + 1] - c.T[i]) >= c.eta * std::log2((double)std::max(i, 2)) - 1e-12);
        double sz = (double)c.blocks[i - 1].size();
        CHECK(sz >= std::pow((double)i, beta) - 1e-9);
        CHECK(sz <= 2.0 * std::pow((double)i, beta) + 1e-9);
        CHECK(c.blocks[i - 1].two_exponent == c.S[i]);
        for (const auto& v : c.blocks[i - 1].values) {
            CHECK(v.bit_length() >= c.S[i] + 1);
            CHECK(v.bit_length() <= c.T[i] + 1);
        }
    }
}

TEST_CASE("th2 parameter validation") {
    CHECK_THROWS_AS(th2_construction(0.75, 0.5, 3.0, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(th2_construction(0.75, 0.3, -1.0, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(th2_construction(0.75, 0.3, 3.0, 4, 3.0), std::invalid_argument);
}

TEST_CASE("th2 flattening is ascending with contiguous gamma ranges") {
    auto c = th2_construction(0.75, 0.3, 3.0, 8, 1.0);
    for (std::size_t k = 1; k < c.flattened.size(); ++k)
        CHECK(*c.flattened[k - 1] < *c.flattened[k]);
    std::size_t expect_begin = 0;
    for (int i = 1; i <= c.i_max; ++i) {
        auto [b, e] = c.gamma[i - 1];
        CHECK(b == expect_begin);
        CHECK(e - b == c.blocks[i - 1].size());
        expect_begin = e;
    }
}

TEST_CASE("th2 magnitude growth stays within the R^{k log k} envelope") {
    auto c = th2_construction(0.75, 0.3, 3.0, 12, 1.0);
    // log n_k <= C k log k for a fitted C: fit at k = 4 and require the
    // normalized ratio to stay bounded (trend check, not an asymptotic claim)
    std::vector<double> lognk;
    for (int i = 1; i <= c.i_max; ++i)
        for (std::size_t e = 0; e < c.blocks[i - 1].size(); ++e)
            lognk.push_back(c.blocks[i - 1].log_values[e]);
    std::sort(lognk.begin(), lognk.end());
    double fit = lognk[3] / (4.0 * std::log(4.0));
    for (std::size_t k = 4; k < lognk.size(); ++k) {
        double kk = (double)(k + 1);
        CHECK(lognk[k] / (kk * std::log(kk)) <= 3.0 * fit);
    }
}

TEST_CASE("divergence partial sums: closed one-block value and monotonicity") {
    auto c = th1_blocks(0.75, 0.1, 12);
    auto sums = divergence_partial_sums(c, 12);
    REQUIRE(sums.size() == 12);

    // one-block value: zeta(2a)/2 times the coefficient-weighted block form
    double expect = riemann_zeta(1.5) / 2.0 * block_quadratic_form(c.blocks[0], 0.75);
    CHECK(sums[0] == doctest::Approx(expect).epsilon(1e-13));
    for (std::size_t i = 1; i < sums.size(); ++i) CHECK(sums[i] > sums[i - 1]);

    auto c2 = th2_construction(0.75, 0.3, 3.0, 8, 1.0);
    auto sums2 = divergence_partial_sums(c2, 8);
    for (std::size_t i = 1; i < sums2.size(); ++i) CHECK(sums2[i] > sums2[i - 1]);
}

TEST_CASE("json serialization round-trips the schedule") {
    auto c = th2_construction(0.75, 0.3, 3.0, 3, 1.0);
    std::string j = to_json(c);
    CHECK(j.find("\"variant\": \"th2\"") != std::string::npos);
    CHECK(j.find("\"S\": 2") != std::string::npos);
    CHECK(j.find("\"value\": \"4\"") != std::string::npos);

    auto c1 = th1_blocks(0.75, 0.1, 2);
    std::string j1 = to_json(c1);
    CHECK(j1.find("\"variant\": \"th1\"") != std::string::npos);
    CHECK(j1.find("\"value\": \"96\"") != std::string::npos);
}

TEST_CASE("k1 default matches the closing-remark formula") {
    double a = 0.75;
    double k1 = th2_default_k1(a, 0.0);
    double expect = std::pow(0.5 / (1.5 * std::log(2.0)), 0.25) * 4.0;
    CHECK(k1 == doctest::Approx(expect).epsilon(1e-14));
}
