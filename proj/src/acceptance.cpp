#include "gcdlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "gcdlab/dilated.hpp"
#include "gcdlab/extremal.hpp"
#include "gcdlab/gcd_spectra.hpp"
#include "gcdlab/numtheory.hpp"
#include "gcdlab/parallel.hpp"
#include "gcdlab/simulate.hpp"
#include "gcdlab/special.hpp"

namespace gcdlab {

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }
    void note(const std::string& msg) {
        if (detail.empty()) detail = msg;
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

int worker_count(int threads) {
    if (threads > 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : (int)hc;
}

// ---- 1. Franel-Landau exactness --------------------------------------------

Check criterion_franel() {
    Check c;
    int count = 0;
    for (u64 k = 1; k <= 30 && c.ok; ++k) {
        for (u64 l = 1; l <= 30 && c.ok; ++l) {
            try {
                Rational r = franel_exact(k, l);  // throws on route mismatch
                u64 g = gcd_u64(k, l);
                Rational expect{(i128)(g * g), (i128)12 * k * l};
                c.require(r == expect, "closed form mismatch at k=" + std::to_string(k) +
                                           " l=" + std::to_string(l));
                ++count;
            } catch (const InvariantViolation& e) {
                c.require(false, e.what());
            }
        }
    }
    c.note(std::to_string(count) + " pairs, exact rational agreement");
    return c;
}

// ---- 2. GCD-norm identity vs Parseval and quadrature ------------------------

Check criterion_norm_identity(int threads) {
    Check c;
    const int instances = 200;
    const double alphas[3] = {0.6, 0.75, 0.9};
    std::vector<std::string> fail(instances);
    std::vector<double> worst_rel(instances, 0.0);
    parallel_for(instances, threads, [&](u64 s) {
        CounterRng rng(424242, s);
        int n = 1 + (int)(rng.next_u64() % 16);
        std::vector<u64> dil;
        while ((int)dil.size() < n) {
            u64 v = 1 + rng.next_u64() % 100;
            if (std::find(dil.begin(), dil.end(), v) == dil.end()) dil.push_back(v);
        }
        std::sort(dil.begin(), dil.end());
        std::vector<double> coeff(n);
        for (int i = 0; i < n; ++i) coeff[i] = 2.0 * rng.next_unit() - 1.0;
        double alpha = alphas[s % 3];
        auto profile = FourierProfile::sine(alpha);

        auto exact = norm_squared(profile, dil, coeff);
        auto oracle = parseval_norm(profile, dil, coeff, u64(1) << 14);
        if (!(oracle.lower <= exact.lower && exact.upper <= oracle.upper)) {
            fail[s] = "instance " + std::to_string(s) + ": exact " + fmt(exact.lower) +
                      " outside Parseval [" + fmt(oracle.lower) + ", " + fmt(oracle.upper) + "]";
            return;
        }
        if (n <= 8) {
            double scale = std::max(std::fabs(exact.lower), 1e-3);
            double quad = norm_squared_quadrature(profile, dil, coeff, 1e-5 * scale);
            double rel = std::fabs(quad - exact.lower) / scale;
            worst_rel[s] = rel;
            if (rel > 1e-4)
                fail[s] = "instance " + std::to_string(s) + ": quadrature rel err " + fmt(rel);
        }
    });
    double worst = 0.0;
    for (int s = 0; s < instances; ++s) {
        if (!fail[s].empty()) c.require(false, fail[s]);
        worst = std::max(worst, worst_rel[s]);
    }
    c.note("200 instances inside enclosures; worst quadrature rel err " + fmt(worst));
    return c;
}

// ---- 3. Block identity -------------------------------------------------------

Check criterion_block_identity() {
    Check c;
    double worst = 0.0;
    for (double alpha : {0.6, 0.75, 0.9}) {
        auto cons = th1_blocks(alpha, 0.1, 12);
        for (const auto& b : cons.blocks) {
            auto sums = block_gcd_identity(b, alpha);
            double rel = std::fabs(sums.direct - sums.closed) / sums.closed;
            worst = std::max(worst, rel);
            c.require(rel < 1e-12, "block i=" + std::to_string(b.index) + " alpha=" +
                                       fmt(alpha) + " rel diff " + fmt(rel));
        }
    }
    c.note("worst relative difference " + fmt(worst));
    return c;
}

// ---- 4. Spectral sanity ------------------------------------------------------

Check criterion_spectral(int threads) {
    Check c;
    for (double alpha : {0.6, 0.75, 0.9}) {
        auto spec300 = GcdMatrixSpec::identity(alpha, 300);
        auto mn = min_eigenvalue(spec300);
        // Cauchy interlacing: the smallest eigenvalue only shrinks as N grows,
        // so positivity at N = 300 certifies every principal N <= 300.
        c.require(mn.lambda > 0.0, "min eigenvalue not positive at N=300, alpha=" + fmt(alpha));
        for (std::size_t n : {1u, 2u, 17u, 150u}) {
            auto spot = min_eigenvalue(GcdMatrixSpec::identity(alpha, n));
            c.require(spot.lambda > 0.0, "min eigenvalue not positive at spot N");
        }

        auto two = largest_eigenvalue(GcdMatrixSpec::identity(alpha, 2), 1e-12, 200000, threads);
        double expect = 1.0 + std::pow(2.0, -alpha);
        c.require(std::fabs(two.lambda - expect) <= 1e-10,
                  "Lambda(G_2) off by " + fmt(std::fabs(two.lambda - expect)) +
                      " at alpha=" + fmt(alpha));
    }

    // Power iteration against the dense Jacobi solve at N = 64.
    for (double alpha : {0.6, 0.75, 0.9}) {
        auto spec = GcdMatrixSpec::identity(alpha, 64);
        auto pow_res = largest_eigenvalue(spec, 1e-11, 200000, threads);
        auto dense = jacobi_eigenvalues(spec);
        c.require(std::fabs(pow_res.lambda - dense.back()) <= 1e-8,
                  "power vs dense gap " + fmt(std::fabs(pow_res.lambda - dense.back())));
    }

    // Monotone growth by principal-submatrix interlacing, alpha = 0.75.
    double prev = 0.0;
    std::vector<double> warm;
    for (std::size_t n = 2; n <= 256; ++n) {
        auto res = largest_eigenvalue(GcdMatrixSpec::identity(0.75, n), 1e-10, 200000, threads,
                                      warm.empty() ? nullptr : &warm);
        c.require(res.lambda >= prev - 1e-9,
                  "Lambda(G_N) dropped at N=" + std::to_string(n));
        prev = res.lambda;
        warm = res.eigenvector;
    }
    c.note("Lambda(G_256) at alpha 0.75 = " + fmt(prev));
    return c;
}

// ---- 5. Hilberdink majorant --------------------------------------------------

Check criterion_majorant(int threads) {
    Check c;
    const u64 n = 200;
    std::vector<std::string> fail(100);
    parallel_for(100, threads, [&](u64 s) {
        CounterRng rng(515151, s);
        std::vector<double> coeff(n);
        for (u64 i = 0; i < n; ++i) coeff[i] = 2.0 * rng.next_unit() - 1.0;
        std::vector<double> abs_c(n);
        for (u64 i = 0; i < n; ++i) abs_c[i] = std::fabs(coeff[i]);
        for (double alpha : {0.6, 0.75, 0.9}) {
            double majorant = hilberdink_majorant(coeff, alpha, 1);
            GcdMatrixSpec spec = GcdMatrixSpec::identity(alpha, n);
            double qf = quadratic_form(spec, abs_c);
            if (majorant < qf * (1.0 - 1e-12)) {
                fail[s] = "violation at trial " + std::to_string(s) + " alpha " + fmt(alpha) +
                          ": " + fmt(majorant) + " < " + fmt(qf);
                return;
            }
        }
    });
    for (auto& f : fail)
        if (!f.empty()) c.require(false, f);
    c.note("300 majorant dominations, zero violations");
    return c;
}

// ---- 6. Growth window --------------------------------------------------------

Check criterion_growth_window(int threads) {
    Check c;
    const double alpha = 0.75;
    const double upper = 17.657;  // Theorem-1 constant at alpha = 0.75
    double prev = -1.0;
    std::vector<double> warm;
    std::string seq;
    for (int e = 4; e <= 12; ++e) {
        std::size_t n = std::size_t{1} << e;
        auto res = largest_eigenvalue(GcdMatrixSpec::identity(alpha, n), 1e-10, 200000, threads,
                                      warm.empty() ? nullptr : &warm);
        warm = res.eigenvector;
        double ln = std::log((double)n);
        double w = std::log(res.lambda) * std::log(ln) / std::pow(ln, 1.0 - alpha);
        seq += (seq.empty() ? "" : " ") + fmt(w);
        c.require(w > 0.0, "window value not positive at N=2^" + std::to_string(e));
        c.require(w <= upper, "window value " + fmt(w) + " above Theorem-1 constant");
        // "increasing-or-flat within noise": eigenvalues are residual-certified
        // to 1e-10, so 1e-6 absolute covers the numerical noise.
        c.require(w >= prev - 1e-6, "window value dropped at N=2^" + std::to_string(e));
        prev = w;
    }
    c.note("window sequence: " + seq);
    return c;
}

// ---- 7. Gronwall envelope ----------------------------------------------------

Check criterion_gronwall() {
    Check c;
    double worst = 0.0;
    for (double s : {0.25, 0.5, 0.75}) {
        for (int r = 1; r <= 12; ++r) {
            u64 k = primorial(r).to_u64();
            double ratio = sigma(-s, k) / gronwall_bound(s, k);
            worst = std::max(worst, ratio);
            c.require(ratio <= 1.5, "ratio " + fmt(ratio) + " at r=" + std::to_string(r) +
                                        " s=" + fmt(s));
        }
    }
    c.note("max sigma/envelope ratio " + fmt(worst));
    return c;
}

// ---- 8. Coarsening decay -----------------------------------------------------

Check criterion_coarsening() {
    Check c;
    const double alpha = 0.75;
    const double expo = (2.0 * alpha - 1.0) / 6.0;
    double c_fit = coarsen_error_l2(alpha, 2, 16) / std::pow(2.0 / 16.0, expo);
    double worst_excess = 0.0;
    std::string worst_at;
    for (u64 k = 1; k <= 8; ++k) {
        for (int e = 4; e <= 10; ++e) {
            u64 m = u64(1) << e;
            double err = coarsen_error_l2(alpha, k, m);
            double bound = c_fit * std::pow((double)k / (double)m, expo);
            double excess = err / bound;
            if (excess > worst_excess) {
                worst_excess = excess;
                worst_at = "(k=" + std::to_string(k) + ", m=" + std::to_string(m) + ")";
            }
            c.require(err <= bound * (1.0 + 1e-9),
                      "bound exceeded at k=" + std::to_string(k) + " m=" + std::to_string(m) +
                          ": err " + fmt(err) + " vs " + fmt(bound));
        }
    }
    c.note("C fit " + fmt(c_fit) + ", worst err/bound " + fmt(worst_excess) + " at " + worst_at);
    return c;
}

// ---- 9. Coupling + CLT -------------------------------------------------------

Check criterion_coupling_clt(int threads) {
    Check c;
    const double alpha = 0.75;
    double delta = th2_default_delta(alpha);
    double beta = th2_default_beta(delta);
    double k1 = th2_default_k1(alpha, 0.1);
    auto cons = th2_construction(alpha, beta, k1, 16, delta);

    SimulationConfig config;
    config.seed = 20250901;
    config.samples = 10000;
    config.i_max = 16;
    config.threads = threads;
    auto coupling = couple_independent(cons, config);

    for (const auto& b : coupling.blocks)
        c.require(std::fabs(b.mean_y) <= 1e-8,
                  "E Y_" + std::to_string(b.index) + " = " + fmt(b.mean_y));

    // ||X_i - Y_i|| <= C i^-2 |Delta_i| with C fit at i = 2.
    auto err_of = [&](int i) { return std::sqrt(coupling.blocks[i - 1].err_sq.hi); };
    auto size_of = [&](int i) { return (double)cons.blocks[i - 1].size(); };
    double c_fit = err_of(2) / (std::pow(2.0, -2.0) * size_of(2));
    for (int i = 1; i <= 16; ++i) {
        double bound = c_fit * std::pow((double)i, -2.0) * size_of(i);
        c.require(err_of(i) <= bound * (1.0 + 1e-9),
                  "coupling error at i=" + std::to_string(i) + ": " + fmt(err_of(i)) +
                      " vs " + fmt(bound));
    }

    auto diag = clt_diagnostics(cons, coupling, config);
    c.require(diag.L[4] > diag.L[8] && diag.L[8] > diag.L[16],
              "L_M not decreasing: " + fmt(diag.L[4]) + ", " + fmt(diag.L[8]) + ", " +
                  fmt(diag.L[16]));
    c.require(diag.ks_pass, "KS statistic " + fmt(diag.ks_statistic) + " above critical " +
                                fmt(diag.ks_critical));
    c.note("KS " + fmt(diag.ks_statistic) + " (crit " + fmt(diag.ks_critical) + "), L = [" +
           fmt(diag.L[4]) + ", " + fmt(diag.L[8]) + ", " + fmt(diag.L[16]) + "]");
    return c;
}

// ---- 10. Divergence trend ----------------------------------------------------

Check criterion_divergence() {
    Check c;
    auto cons = th1_blocks(0.75, 0.1, 20);
    auto sums = divergence_partial_sums(cons, 20);
    for (std::size_t i = 1; i < sums.size(); ++i)
        c.require(sums[i] > sums[i - 1], "partial sums not strictly increasing at block " +
                                             std::to_string(i + 1));
    double prev = 0.0;
    for (int i = 11; i <= 20; ++i) {
        double inc = sums[i - 1] - sums[i - 2];
        double scaled = inc * (double)i * (double)i;
        if (i > 11)
            c.require(scaled > prev, "increment * i^2 not increasing at i=" + std::to_string(i) +
                                         ": " + fmt(scaled) + " after " + fmt(prev));
        prev = scaled;
    }

    double mass = 0.0, expect = 0.0;
    for (int i = 1; i <= 20; ++i) {
        mass += th1_block_weyl_mass(cons, cons.blocks[i - 1]);
        expect += 1.0 / ((double)i * (double)i);
    }
    double rel = std::fabs(mass - expect) / expect;
    c.require(rel <= 1e-10, "Weyl mass rel err " + fmt(rel));
    c.note("last scaled increment " + fmt(prev) + ", Weyl-mass rel err " + fmt(rel));
    return c;
}

// ---- 11. Reproducibility -----------------------------------------------------

Check criterion_reproducibility() {
    Check c;
    SimulateRunOptions opt;
    opt.seed = 99;
    opt.samples = 1500;
    opt.alpha = 0.75;
    opt.n = 8;
    opt.cesaro_n = 128;
    opt.trajectory_count = 3;

    opt.threads = 1;
    std::string a_json = simulate_report_json(opt);
    std::string a_csv = simulate_trajectories_csv(opt);
    opt.threads = 2;
    std::string b_json = simulate_report_json(opt);
    std::string b_csv = simulate_trajectories_csv(opt);
    opt.threads = 1;
    std::string c_json = simulate_report_json(opt);

    c.require(a_json == b_json, "JSON differs between thread counts");
    c.require(a_json == c_json, "JSON differs between identical runs");
    c.require(a_csv == b_csv, "trajectory CSV differs between thread counts");
    c.note(std::to_string(a_json.size()) + " bytes, byte-identical across runs and threads");
    return c;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(
    int id, int threads, const std::function<void(const CriterionResult&)>& on_result) {
    threads = worker_count(threads);
    std::vector<CriterionResult> results;
    auto run = [&](int cid, const char* name, double budget, auto&& fn) {
        if (id != 0 && id != cid) return;
        CriterionResult r;
        r.id = cid;
        r.name = name;
        r.budget_seconds = budget;
        auto t0 = std::chrono::steady_clock::now();
        try {
            Check c = fn();
            r.pass = c.ok;
            r.detail = c.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.within_budget = r.seconds < budget;
        r.pass = r.pass && r.within_budget;
        if (on_result) on_result(r);
        results.push_back(std::move(r));
    };

    run(1, "franel exact identity (k,l <= 30)", 5.0, [] { return criterion_franel(); });
    run(2, "gcd-norm identity vs parseval + quadrature", 120.0,
        [&] { return criterion_norm_identity(threads); });
    run(3, "block gcd identity direct vs closed", 30.0, [] { return criterion_block_identity(); });
    run(4, "spectral sanity (positivity, G_2, monotone, dense match)", 120.0,
        [&] { return criterion_spectral(threads); });
    run(5, "hilberdink majorant domination", 60.0, [&] { return criterion_majorant(threads); });
    run(6, "growth window at alpha 0.75", 300.0, [&] { return criterion_growth_window(threads); });
    run(7, "gronwall envelope on primorials", 1.0, [] { return criterion_gronwall(); });
    run(8, "coarsening decay bound", 60.0, [] { return criterion_coarsening(); });
    run(9, "coupling + lyapunov clt", 600.0, [&] { return criterion_coupling_clt(threads); });
    run(10, "th1 divergence trend", 60.0, [] { return criterion_divergence(); });
    run(11, "simulate reproducibility", 120.0, [] { return criterion_reproducibility(); });
    return results;
}

std::string format_criterion(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "[%2d] %s  %-52s (%.2f s)", r.id,
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
    std::string line = head;
    if (!r.detail.empty()) line += "\n     " + r.detail;
    if (!r.within_budget)
        line += "\n     over budget: " + std::to_string(r.seconds) + " s >= " +
                std::to_string(r.budget_seconds) + " s";
    return line;
}

}  // namespace gcdlab
