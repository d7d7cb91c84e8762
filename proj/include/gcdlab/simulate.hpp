#pragma once

#include <cstdint>
#include <vector>

#include "gcdlab/extremal.hpp"
#include "gcdlab/profile.hpp"

namespace gcdlab {

struct SimulationConfig {
    u64 seed = 1;
    u64 samples = 10000;
    int i_max = 16;               // block horizon M
    int grid_depth = 0;           // dyadic resolution exponent; 0 = derive S_{i_max+1}
    double quad_tol = 1e-9;       // per-integral quadrature tolerance
    int threads = 1;              // worker cap; results are thread-count independent
    int exact_gram_max_depth = 26;  // blocks up to this depth get the exact projection Gram
    int resample_budget = 100;
};

// Counter-based stream: the n-th draw of stream s under seed k is a pure
// function of (k, s, n), so parallel sampling is order-independent.
class CounterRng {
public:
    CounterRng(u64 seed, u64 stream);
    u64 next_u64();
    // Uniform in (0,1) of the exact form (2r+1)/2^53: never 0 or 1, and the
    // sample sits on a dyadic grid so deep cell indices stay exact.
    double next_unit();

private:
    u64 key_;
    u64 ctr_ = 0;
};

// Partial sums S_M(x) = sum_{k<=M} c_k f(n_k x) for M = 1..upto.
// Throws std::domain_error when x hits a dilation singularity.
std::vector<double> trajectory(const FourierProfile& profile, const std::vector<u64>& dilations,
                               const std::vector<double>& c, double x, std::size_t upto);

struct McNorm {
    double mean_sq = 0.0;
    double std_error = 0.0;
    u64 samples = 0;
    u64 resamples = 0;
};
// Empirical second moment of S_N(x) over random x.
McNorm monte_carlo_norm_sq(const FourierProfile& profile, const std::vector<u64>& dilations,
                           const std::vector<double>& c, const SimulationConfig& config);

struct SupSummary {
    std::vector<double> per_sample_max;
    double mean_max_sq = 0.0;    // empirical || max_M |S_M| ||^2
    double mean_final_sq = 0.0;  // empirical || S_N ||^2
    double q50 = 0.0, q90 = 0.0, q99 = 0.0, max = 0.0;
    u64 resamples = 0;
};
SupSummary sup_tracker(const FourierProfile& profile, const std::vector<u64>& dilations,
                       const std::vector<double>& c, const SimulationConfig& config);

// ---- Lemma-style coupling on a Th2 construction ----------------------------
//
// Block i lives on cells of width 2^{-S_{i+1}}; under the measure-preserving
// rescaling y = 2^{S_i} x mod 1 it becomes the coarsening of
// g_i(y) = sum_u f_alpha(u y) at depth D_i = S_{i+1} - S_i.  All moments and
// samples below are taken in these block coordinates.

struct CoupledBlock {
    int index = 1;
    int depth = 0;            // D_i
    std::vector<u64> u;       // block multipliers, ascending
    double var_x = 0.0;       // ||X_i||^2, exact GCD closed form
    Enclosure err_sq;         // ||X_i - Y_i||^2
    Enclosure var_y;          // ||Y_i||^2 = var_x - err_sq
    double mean_y = 0.0;      // quadrature verification of E Y_i = 0
    double moment_x = 0.0;    // E|X_i|^{2+delta} (bounds the Y_i moment by Jensen)
    bool exact_gram = false;  // projection Gram computed exactly
};

struct Coupling {
    double alpha = 0.75;
    double delta = 1.0;
    std::vector<CoupledBlock> blocks;
    std::vector<double> d;  // block coefficients d_i, 1-based at [i]

    // Y_i sample value at block coordinate y: the conditional-expectation
    // cell average at depth D_i (antiderivative differences up to depth 50,
    // point values beyond, where cells sink below double resolution).
    double y_value(int i, double y) const;
    double x_value(int i, double y) const;  // X_i = g_i(y)
};

Coupling couple_independent(const Th2Construction& construction, const SimulationConfig& config);

// Exact projection Gram <[f_u]_m, [f_v]_m> at m = 2^depth cells, through the
// coherent residue-class amplitudes (Hurwitz-zeta sums); cost O(2^depth).
std::vector<std::vector<double>> coarsened_block_gram(double alpha, const std::vector<u64>& us,
                                                      int depth, int threads = 1);

// Closed-form upper bound for || f(u .) - [f(u .)]_{2^depth} ||^2; valid for
// every depth, used where the exact Gram is out of reach.
double coarsening_err_sq_upper(double alpha, u64 u, int depth);

// Evaluate Y_i at a shared base-space point x (needs S_{i+1} within double
// range); used by the independence cross-checks.
double y_value_at_x(const Coupling& coupling, const Th2Construction& construction, int i,
                    double x);

struct CltDiagnostics {
    std::vector<double> block_variance;  // d_i^2 Var(Y_i), 1-based at [i]
    std::vector<double> block_moment;    // d_i^{2+delta} E|Y_i|^{2+delta} bound
    std::vector<double> B, D, L;         // cumulative sums and Lyapunov ratio, 1-based
    double ks_statistic = 0.0;
    double ks_critical = 0.0;
    bool ks_pass = false;
    double tail_probability = 0.0;  // empirical P(|sum| >= sqrt(B_M)/log M)
    u64 sample_count = 0;
};
CltDiagnostics clt_diagnostics(const Th2Construction& construction, const Coupling& coupling,
                               const SimulationConfig& config);

struct CesaroResult {
    std::vector<double> averages;
    double max_abs = 0.0;
};
// (1/N) sum_{k<=N} f(k x) per sample point.
CesaroResult cesaro_average(const FourierProfile& profile, const std::vector<double>& x_samples,
                            u64 N);

double normal_cdf(double z);
// One-sample Kolmogorov-Smirnov statistic against the standard normal.
double ks_statistic_vs_normal(std::vector<double> samples);
// Asymptotic critical value at the given significance (0.01 or 0.05).
double ks_critical_value(double significance, u64 n);

// Batch simulation surface used by the CLI: Monte-Carlo norm consistency,
// sup tracking and Khinchin averages for the extremal profile on identity
// dilations with c_k = 1/k.  The JSON echoes the effective config (threads
// excluded: they cannot change any emitted number) and is byte-stable.
struct SimulateRunOptions {
    u64 seed = 1;
    u64 samples = 2000;
    double alpha = 0.75;
    u64 n = 8;          // dilations 1..n
    u64 cesaro_n = 256;
    int threads = 1;
    u64 trajectory_count = 4;   // trajectories emitted to CSV
};
std::string simulate_report_json(const SimulateRunOptions& opt);
std::string simulate_trajectories_csv(const SimulateRunOptions& opt);

}  // namespace gcdlab
