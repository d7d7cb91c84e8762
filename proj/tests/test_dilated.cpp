#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gcdlab/dilated.hpp"
#include "gcdlab/simulate.hpp"
#include "gcdlab/special.hpp"

using namespace gcdlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("franel closed values") {
    CHECK(franel_exact(1, 1) == Rational{1, 12});
    CHECK(franel_exact(2, 3) == Rational{1, 72});
    CHECK(franel_exact(4, 6) == Rational{1, 72});
    CHECK(franel_exact(7, 7) == Rational{1, 12});
    CHECK(franel_exact(30, 25).to_double() ==
          doctest::Approx(25.0 / (12.0 * 750.0)).epsilon(1e-15));
    CHECK_THROWS_AS(franel_exact(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(franel_exact(3, 20000), std::invalid_argument);
}

TEST_CASE("franel at moderate arguments stays exact") {
    // the piecewise route runs over ~2k breakpoints here
    CHECK(franel_exact(997, 1003) == Rational{1, (i128)12 * 997 * 1003});
    CHECK(franel_exact(999, 111) == Rational{(i128)111 * 111, (i128)12 * 999 * 111});
}

TEST_CASE("inner products: closed forms") {
    double a = 0.75;
    double z = riemann_zeta(1.5);
    auto profile = FourierProfile::sine(a);

    auto diag = inner_product(profile, 5, 5);
    CHECK(diag.lower == diag.upper);
    CHECK(diag.lower == doctest::Approx(z / 2.0).epsilon(1e-13));
    CHECK(z / 2.0 == doctest::Approx(1.306188).epsilon(1e-6));

    auto coprime = inner_product(profile, 4, 9);
    CHECK(coprime.lower == doctest::Approx(z / 2.0 * std::pow(36.0, -a)).epsilon(1e-13));

    // cosine profile shares the closed form
    auto cosine = inner_product(FourierProfile::cosine(a), 4, 9);
    CHECK(cosine.lower == doctest::Approx(coprime.lower).epsilon(1e-14));

    // bernoulli: pi^2 gcd^2/(12 m n), the Franel value scaled by pi^2
    auto bern = inner_product(FourierProfile::bernoulli_profile(), 2, 3);
    CHECK(bern.lower == doctest::Approx(kPi * kPi / 72.0).epsilon(1e-14));
    CHECK(bern.lower ==
          doctest::Approx(kPi * kPi * franel_exact(2, 3).to_double()).epsilon(1e-13));
}

TEST_CASE("inner product for a custom profile encloses a quadrature oracle") {
    double a = 0.75;
    auto profile = FourierProfile::custom(a, 1.0, [a](u64 j) {
        return std::pair{std::pow((double)j, -a), 0.0};
    });
    auto enc = inner_product(profile, 2, 3, 2000);
    double exact = riemann_zeta(1.5) / 2.0 * std::pow(6.0, -a);
    CHECK(enc.lower <= exact);
    CHECK(exact <= enc.upper);
    // tail shrinks like T^{1-2a}: quadrupling the truncation halves the width
    auto finer = inner_product(profile, 2, 3, 8000);
    CHECK(finer.width() == doctest::Approx(0.5 * enc.width()).epsilon(0.02));
}

TEST_CASE("norm squared closed forms") {
    double a = 0.75;
    double z = riemann_zeta(1.5);
    auto profile = FourierProfile::sine(a);

    auto single = norm_squared(profile, {7}, {1.0});
    CHECK(single.lower == doctest::Approx(z / 2.0).epsilon(1e-13));

    auto two = norm_squared(profile, {1, 2}, {1.0, -1.0});
    CHECK(two.lower == doctest::Approx(z * (1.0 - std::pow(2.0, -a))).epsilon(1e-13));

    auto zeros = norm_squared(profile, {3, 9, 11}, {0.0, 0.0, 0.0});
    CHECK(zeros.lower == 0.0);
    CHECK(zeros.upper == 0.0);

    CHECK_THROWS_AS(norm_squared(profile, {1, 2}, {1.0}), std::invalid_argument);
}

TEST_CASE("parseval oracle encloses the exact norm") {
    CounterRng rng(5, 0);
    for (int trial = 0; trial < 40; ++trial) {
        double a = (trial % 3 == 0) ? 0.6 : (trial % 3 == 1 ? 0.75 : 0.9);
        int n = 1 + (int)(rng.next_u64() % 10);
        std::vector<u64> dil;
        while ((int)dil.size() < n) {
            u64 v = 1 + rng.next_u64() % 100;
            if (std::find(dil.begin(), dil.end(), v) == dil.end()) dil.push_back(v);
        }
        std::sort(dil.begin(), dil.end());
        std::vector<double> c(n);
        for (auto& v : c) v = 2.0 * rng.next_unit() - 1.0;
        auto profile = FourierProfile::sine(a);
        auto exact = norm_squared(profile, dil, c);
        auto oracle = parseval_norm(profile, dil, c, 1 << 14);
        CHECK(oracle.lower <= exact.lower + 1e-12);
        CHECK(exact.upper <= oracle.upper + 1e-12);
    }
}

TEST_CASE("parseval single-function case and tail scaling") {
    auto profile = FourierProfile::sine(0.75);
    auto enc = parseval_norm(profile, {1}, {1.0}, 4096);
    CHECK(enc.lower <= riemann_zeta(1.5) / 2.0);
    CHECK(riemann_zeta(1.5) / 2.0 <= enc.upper);

    // enclosure width is exactly the closed-form tail, so the J-scaling of
    // widths is (J2/J1)^{1-2a}
    auto p06 = FourierProfile::sine(0.6);
    auto w1 = parseval_norm(p06, {1, 3}, {0.5, -0.25}, 1 << 10);
    auto w2 = parseval_norm(p06, {1, 3}, {0.5, -0.25}, 1 << 14);
    CHECK(w2.width() / w1.width() == doctest::Approx(std::pow(16.0, -0.2)).epsilon(1e-12));

    CHECK_THROWS_AS(parseval_norm(profile, {8}, {1.0}, 4), std::invalid_argument);
}

TEST_CASE("quadrature route matches the exact norm") {
    auto profile = FourierProfile::sine(0.75);
    std::vector<u64> dil{1, 2, 5, 9};
    std::vector<double> c{0.7, -0.3, 0.45, 0.2};
    auto exact = norm_squared(profile, dil, c);
    double quad = norm_squared_quadrature(profile, dil, c, 1e-8);
    CHECK(std::fabs(quad - exact.lower) / exact.lower < 1e-4);
}

TEST_CASE("sine-cosine cross terms vanish") {
    // mixed profile: the L2 norm splits into the pure sine and cosine parts
    double a = 0.75;
    std::vector<u64> dil{2, 3};
    std::vector<double> c{1.0, 0.5};
    auto quad_mixed = [&](double x) {
        double s = 0.0;
        for (int i = 0; i < 2; ++i) {
            double t = (double)dil[i] * x;
            if (t - std::floor(t) == 0.0) return 0.0;
            s += c[i] * (eval_f_alpha_periodic(a, t, Parity::sine) +
                         eval_f_alpha_periodic(a, t, Parity::cosine));
        }
        return s * s;
    };
    std::vector<double> pts;
    for (u64 nk : dil)
        for (u64 q = 1; q < nk; ++q) pts.push_back((double)q / (double)nk);
    double mixed = integrate_unit_singular(quad_mixed, pts, 0.5, 0.25, 1e-8);
    double sine_part = norm_squared(FourierProfile::sine(a), dil, c).lower;
    double cos_part = norm_squared(FourierProfile::cosine(a), dil, c).lower;
    CHECK(mixed == doctest::Approx(sine_part + cos_part).epsilon(1e-4));
}

TEST_CASE("koksma domination for admissible custom profiles") {
    CounterRng rng(29, 0);
    for (int trial = 0; trial < 10; ++trial) {
        double a = 0.75;
        double C = 1.0 + rng.next_unit();
        // random coefficients within the |a_j| <= C j^{-a} envelope
        u64 mod_seed = rng.next_u64();
        auto profile = FourierProfile::custom(a, C, [a, C, mod_seed](u64 j) {
            u64 h = (j * 0x9E3779B97F4A7C15ULL) ^ mod_seed;
            double unit = (double)(h >> 11) * 0x1p-53;
            double amp = C * std::pow((double)j, -a);
            return std::pair{amp * (2.0 * unit - 1.0), amp * (1.0 - unit)};
        });
        std::vector<u64> dil{1, 4, 6, 9, 14};
        std::vector<double> c(5);
        for (auto& v : c) v = 2.0 * rng.next_unit() - 1.0;
        auto enc = norm_squared(profile, dil, c);
        std::vector<double> abs_c(5);
        for (int i = 0; i < 5; ++i) abs_c[i] = std::fabs(c[i]);
        GcdMatrixSpec spec{a, dil};
        double koksma = C * C * riemann_zeta(2.0 * a) * quadratic_form(spec, abs_c);
        CHECK(enc.upper <= koksma * (1.0 + 1e-12));
        CHECK(enc.lower <= enc.upper);
    }
}

TEST_CASE("sigma weighted bound") {
    // single index: lhs = c_N^2, rhs = c_N^2 sigma(N) >= lhs
    std::vector<double> c(10, 0.0);
    c[9] = 0.8;
    auto [lhs, rhs] = sigma_weighted_bound(c, 0.75, 0.1, 10, 10);
    CHECK(lhs == doctest::Approx(0.64).epsilon(1e-14));
    CHECK(rhs >= lhs);

    CHECK_THROWS_AS(sigma_weighted_bound(c, 0.55, 0.2, 1, 10), std::invalid_argument);

    // random sweep: ratio lhs/rhs stays bounded
    CounterRng rng(31, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> cc(200);
        for (auto& v : cc) v = 2.0 * rng.next_unit() - 1.0;
        auto [l, r] = sigma_weighted_bound(cc, 0.75, 0.1, 1, 200);
        worst = std::max(worst, l / r);
    }
    // primorial-concentrated mass (the sigma-heavy worst case)
    std::vector<double> conc(211, 0.0);
    conc[1] = conc[5] = conc[29] = conc[209] = 1.0;  // 2, 6, 30, 210
    auto [lp, rp] = sigma_weighted_bound(conc, 0.75, 0.1, 1, 211);
    worst = std::max(worst, lp / rp);
    CHECK(worst < 25.0);
    MESSAGE("max lhs/rhs ratio observed: ", worst);
}
