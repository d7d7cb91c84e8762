#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gcdlab/dilated.hpp"
#include "gcdlab/extremal.hpp"
#include "gcdlab/simulate.hpp"
#include "gcdlab/special.hpp"

using namespace gcdlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Hand-built two-block construction with shallow grids (D_i = 5), so every
// coupling quantity can be cross-checked against literal cell enumeration.
Th2Construction tiny_construction(int s2 = 7, int s3 = 12) {
    Th2Construction c;
    c.alpha = 0.75;
    c.beta = 0.3;
    c.delta = 1.0;
    c.K1 = 1.0;
    c.eta = 24.0;
    c.i_max = 2;
    c.A = {0, 1, 1, 0};
    c.S = {0, 2, s2, s3};
    c.T = {0, 3, s2 + 1, 0};
    c.d = {0.0, 0.5, 0.25};
    for (int i = 1; i <= 2; ++i) {
        SmoothBlock b;
        b.index = i;
        b.two_exponent = c.S[i];
        b.primes = {2};
        BigUint base{1};
        for (int t = 0; t < c.S[i]; ++t) base.mul_u64(2);
        b.values = {base, base.times(2)};
        b.log_values = {c.S[i] * std::log(2.0), (c.S[i] + 1) * std::log(2.0)};
        b.coeffs = {c.d[i], c.d[i]};
        c.blocks.push_back(std::move(b));
    }
    return c;
}

double box_muller(CounterRng& rng) {
    double u1 = rng.next_unit(), u2 = rng.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

}  // namespace

TEST_CASE("counter rng is stream and order independent") {
    CounterRng a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CounterRng c1(42, 8);
    CHECK(c1.next_u64() != CounterRng(42, 7).next_u64());
    // units are strictly inside (0,1) with odd 54-bit numerators
    CounterRng d(1, 0);
    for (int i = 0; i < 1000; ++i) {
        double x = d.next_unit();
        CHECK(x > 0.0);
        CHECK(x < 1.0);
        double scaled = std::ldexp(x, 53);
        CHECK(scaled == std::floor(scaled));
        CHECK(std::fmod(scaled, 2.0) == 1.0);
    }
}

TEST_CASE("trajectory basics") {
    auto f1 = FourierProfile::bernoulli_profile();
    auto traj = trajectory(f1, {1}, {1.0}, 0.25, 1);
    REQUIRE(traj.size() == 1);
    CHECK(traj[0] == doctest::Approx(kPi / 4.0));

    auto zeros = trajectory(f1, {1, 2, 3}, {0.0, 0.0, 0.0}, 0.37, 3);
    for (double v : zeros) CHECK(v == 0.0);

    auto sine = FourierProfile::sine(0.75);
    CHECK_THROWS_AS(trajectory(sine, {4}, {1.0}, 0.25, 1), std::domain_error);
    CHECK_THROWS_AS(trajectory(sine, {2}, {1.0}, 0.3, 2), std::invalid_argument);
}

TEST_CASE("monte carlo second moment matches the exact norm") {
    auto profile = FourierProfile::sine(0.75);
    std::vector<u64> dil{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> c{1.0, -0.5, 0.33, 0.25, -0.2, 0.17, -0.14, 0.125};
    SimulationConfig config;
    config.seed = 2024;
    config.samples = 20000;
    config.threads = 2;
    auto mc = monte_carlo_norm_sq(profile, dil, c, config);
    double exact = norm_squared(profile, dil, c).lower;
    CHECK(std::fabs(mc.mean_sq - exact) <= 3.0 * mc.std_error);
}

TEST_CASE("sup tracker dominates the final partial sum") {
    auto profile = FourierProfile::sine(0.75);
    std::vector<u64> dil{1, 3, 7, 12, 30};
    std::vector<double> c{0.8, -0.4, 0.3, 0.2, -0.35};
    SimulationConfig config;
    config.seed = 9;
    config.samples = 4000;
    auto sup = sup_tracker(profile, dil, c, config);
    CHECK(sup.mean_max_sq >= sup.mean_final_sq);
    CHECK(sup.q50 <= sup.q90);
    CHECK(sup.q90 <= sup.q99);
    CHECK(sup.q99 <= sup.max);

    // single term: max is |c_1 f(n_1 x)|
    auto single = sup_tracker(profile, {5}, {0.6}, config);
    CHECK(single.mean_max_sq == doctest::Approx(single.mean_final_sq));
}

TEST_CASE("sup tracker against the maximal weyl bound on a th1 prefix") {
    // empirical || max |S_M| ||^2 <= fitted constant * weyl(N) * sum c^2
    auto cons = th1_blocks(0.75, 0.1, 5);
    std::vector<u64> dil;
    std::vector<double> c;
    for (const auto& b : cons.blocks) {
        std::vector<std::pair<u64, double>> items;
        for (std::size_t e = 0; e < b.size(); ++e)
            items.emplace_back(b.values[e].to_u64(), b.coeffs[e]);
        std::sort(items.begin(), items.end());
        for (auto& [v, cv] : items) {
            dil.push_back(v);
            c.push_back(cv);
        }
    }
    SimulationConfig config;
    config.seed = 77;
    config.samples = 3000;
    config.threads = 2;
    auto sup = sup_tracker(FourierProfile::sine(0.75), dil, c, config);
    double sum_c2 = 0.0;
    for (double v : c) sum_c2 += v * v;
    WeylFactorParams wp{0.75, weyl_constant_th1(0.75)};
    double bound = weyl_factor(wp, dil.size(), WeylVariant::th1) * sum_c2;
    double ratio = sup.mean_max_sq / bound;
    MESSAGE("sup-tracker ratio to the weyl bound: ", ratio);
    CHECK(ratio <= 1.0);
}

TEST_CASE("coupling on a shallow construction matches cell enumeration") {
    auto cons = tiny_construction();
    SimulationConfig config;
    config.seed = 5;
    config.samples = 100;
    config.i_max = 2;
    auto coupling = couple_independent(cons, config);
    REQUIRE(coupling.blocks.size() == 2);
    const auto& b1 = coupling.blocks[0];
    CHECK(b1.depth == 5);
    CHECK(b1.exact_gram);
    CHECK(b1.u == std::vector<u64>{1, 2});

    // literal enumeration at m = 32 cells
    const u64 m = 32;
    auto c1 = dyadic_coarsen_f_alpha(0.75, 1, m);
    auto c2 = dyadic_coarsen_f_alpha(0.75, 2, m);
    double gram11 = 0.0, gram12 = 0.0, gram22 = 0.0;
    for (u64 l = 0; l < m; ++l) {
        gram11 += c1.values[l] * c1.values[l];
        gram12 += c1.values[l] * c2.values[l];
        gram22 += c2.values[l] * c2.values[l];
    }
    gram11 /= (double)m;
    gram12 /= (double)m;
    gram22 /= (double)m;

    double z = riemann_zeta(1.5);
    double var_x = z / 2.0 * (2.0 + 2.0 * std::pow(2.0, -0.75));
    CHECK(b1.var_x == doctest::Approx(var_x).epsilon(1e-12));
    double var_y_cells = gram11 + 2.0 * gram12 + gram22;
    CHECK(b1.var_y.mid() == doctest::Approx(var_y_cells).epsilon(1e-9));
    CHECK(b1.err_sq.lo == doctest::Approx(var_x - var_y_cells).epsilon(1e-7));

    // mean of Y vanishes
    CHECK(std::fabs(b1.mean_y) < 1e-8);
    CHECK(std::fabs(coupling.blocks[1].mean_y) < 1e-8);

    // conditional expectation contracts the L2 norm
    CHECK(b1.var_y.hi <= b1.var_x);
}

TEST_CASE("gram helper agrees with cell enumeration for mixed multipliers") {
    std::vector<u64> us{1, 2, 3, 6};
    int depth = 8;
    auto gram = coarsened_block_gram(0.75, us, depth, 2);
    const u64 m = u64(1) << depth;
    std::vector<PiecewiseConstant> cells;
    for (u64 u : us) cells.push_back(dyadic_coarsen_f_alpha(0.75, u, m));
    for (std::size_t a = 0; a < us.size(); ++a) {
        for (std::size_t b = 0; b < us.size(); ++b) {
            double direct = 0.0;
            for (u64 l = 0; l < m; ++l) direct += cells[a].values[l] * cells[b].values[l];
            direct /= (double)m;
            CHECK(gram[a][b] == doctest::Approx(direct).epsilon(1e-8));
        }
    }
}

TEST_CASE("closed-form coarsening bound dominates the exact error") {
    for (double alpha : {0.6, 0.75, 0.9}) {
        for (u64 u : {1ull, 2ull, 3ull, 5ull, 6ull, 12ull}) {
            for (int depth = 4; depth <= 13; ++depth) {
                double exact = coarsen_error_l2(alpha, u, u64(1) << depth);
                double upper = coarsening_err_sq_upper(alpha, u, depth);
                CHECK(exact * exact <= upper);
            }
        }
    }
}

TEST_CASE("y_value equals the literal cell average on shallow grids") {
    auto cons = tiny_construction();
    SimulationConfig config;
    config.i_max = 2;
    auto coupling = couple_independent(cons, config);
    const u64 m = 32;
    auto c1 = dyadic_coarsen_f_alpha(0.75, 1, m);
    auto c2 = dyadic_coarsen_f_alpha(0.75, 2, m);
    CounterRng rng(123, 0);
    for (int t = 0; t < 200; ++t) {
        double y = rng.next_unit();
        u64 l = (u64)std::floor(y * (double)m);
        CHECK(coupling.y_value(1, y) ==
              doctest::Approx(c1.values[l] + c2.values[l]).epsilon(1e-8));
    }
}

TEST_CASE("y_value falls back to the point value on deep grids") {
    auto cons = tiny_construction(60, 118);  // D_1 = 58 > 50
    SimulationConfig config;
    config.i_max = 2;
    config.exact_gram_max_depth = 10;  // force the bound route
    auto coupling = couple_independent(cons, config);
    CHECK(coupling.blocks[0].depth == 58);
    CHECK(!coupling.blocks[0].exact_gram);
    CounterRng rng(7, 3);
    for (int t = 0; t < 50; ++t) {
        double y = rng.next_unit();
        CHECK(coupling.y_value(1, y) == doctest::Approx(coupling.x_value(1, y)).epsilon(1e-12));
    }
}

TEST_CASE("coupled blocks sampled at a shared base point are uncorrelated") {
    auto cons = tiny_construction();
    SimulationConfig config;
    config.i_max = 2;
    auto coupling = couple_independent(cons, config);
    const int n = 10000;
    CounterRng rng(2718, 0);
    double s1 = 0.0, s2 = 0.0, s11 = 0.0, s22 = 0.0, s12 = 0.0;
    for (int t = 0; t < n; ++t) {
        double x = rng.next_unit();
        double y1 = y_value_at_x(coupling, cons, 1, x);
        double y2 = y_value_at_x(coupling, cons, 2, x);
        s1 += y1;
        s2 += y2;
        s11 += y1 * y1;
        s22 += y2 * y2;
        s12 += y1 * y2;
    }
    double corr = (s12 / n - s1 / n * s2 / n) /
                  std::sqrt((s11 / n - s1 / n * s1 / n) * (s22 / n - s2 / n * s2 / n));
    CHECK(std::fabs(corr) <= 4.0 / std::sqrt((double)n));

    // structural independence: Y_2 repeats its pattern across each F_1 cell
    double period = std::ldexp(1.0, -cons.S[2]);
    CounterRng rng2(3141, 0);
    for (int t = 0; t < 100; ++t) {
        double x = rng2.next_unit() * 0.5;
        CHECK(y_value_at_x(coupling, cons, 2, x) ==
              doctest::Approx(y_value_at_x(coupling, cons, 2, x + period)).epsilon(1e-10));
    }
}

TEST_CASE("clt diagnostics on the real construction, bound route") {
    double delta = th2_default_delta(0.75);
    auto cons = th2_construction(0.75, th2_default_beta(delta), th2_default_k1(0.75, 0.1), 8,
                                 delta);
    SimulationConfig config;
    config.seed = 404;
    config.samples = 2000;
    config.i_max = 8;
    config.exact_gram_max_depth = 10;  // keep the unit test fast
    config.threads = 2;
    auto coupling = couple_independent(cons, config);
    auto diag = clt_diagnostics(cons, coupling, config);

    for (int i = 1; i <= 8; ++i) {
        CHECK(diag.B[i] > diag.B[i - 1]);            // variances accumulate
        CHECK(diag.block_moment[i] >= 0.0);
    }
    CHECK(diag.D[8] < 10.0 * diag.D[1]);  // moment increments die off fast
    CHECK(diag.ks_statistic > 0.0);
    CHECK(diag.ks_critical == doctest::Approx(1.62762 / std::sqrt(2000.0)));
    CHECK(diag.tail_probability >= 0.0);
    CHECK(diag.tail_probability <= 1.0);

    // thread count cannot change a single bit
    config.threads = 1;
    auto diag1 = clt_diagnostics(cons, coupling, config);
    CHECK(diag1.ks_statistic == diag.ks_statistic);
    CHECK(diag1.tail_probability == diag.tail_probability);

    // coupling errors decay summably across blocks
    double total = 0.0;
    for (const auto& b : coupling.blocks) total += std::sqrt(b.err_sq.hi);
    CHECK(total < 1.0);
}

TEST_CASE("ks statistic sanity") {
    std::vector<double> normals(5000);
    CounterRng rng(999, 0);
    for (auto& v : normals) v = box_muller(rng);
    double d = ks_statistic_vs_normal(normals);
    CHECK(d <= ks_critical_value(0.01, normals.size()));

    for (auto& v : normals) v += 0.25;  // shifted: clearly not standard normal
    CHECK(ks_statistic_vs_normal(normals) > ks_critical_value(0.01, normals.size()));

    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(normal_cdf(1.6448536269514722) == doctest::Approx(0.95).epsilon(1e-9));
}

TEST_CASE("cesaro averages") {
    auto f1 = FourierProfile::bernoulli_profile();
    auto res = cesaro_average(f1, {0.5}, 4);
    REQUIRE(res.averages.size() == 1);
    // f1(k/2) alternates 0 (k odd) and pi/2 (k even)
    CHECK(res.averages[0] == doctest::Approx(kPi / 4.0));

    // koksma-positive regime for f_alpha: averages shrink with N
    auto sine = FourierProfile::sine(0.75);
    std::vector<double> xs;
    CounterRng rng(31337, 0);
    for (int i = 0; i < 50; ++i) xs.push_back(rng.next_unit());
    auto small_n = cesaro_average(sine, xs, 100);
    auto large_n = cesaro_average(sine, xs, 10000);
    CHECK(large_n.max_abs < small_n.max_abs);
    MESSAGE("cesaro max |avg| at N=1e4: ", large_n.max_abs);
}

TEST_CASE("simulate report is byte stable across runs and threads") {
    SimulateRunOptions opt;
    opt.seed = 7;
    opt.samples = 500;
    opt.alpha = 0.75;
    opt.n = 6;
    opt.cesaro_n = 64;
    opt.threads = 1;
    std::string once = simulate_report_json(opt);
    std::string again = simulate_report_json(opt);
    CHECK(once == again);
    opt.threads = 2;
    CHECK(simulate_report_json(opt) == once);
    CHECK(once.find("\"mc_within_3se\": true") != std::string::npos);
    // the echoed config never mentions threads
    CHECK(once.find("threads") == std::string::npos);
}
