#include "gcdlab/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "gcdlab/quadrature.hpp"
#include "gcdlab/special.hpp"

namespace gcdlab {

namespace {
constexpr double kPi = std::numbers::pi;

u64 splitmix64(u64 x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
}  // namespace

CounterRng::CounterRng(u64 seed, u64 stream)
    : key_(splitmix64(seed ^ splitmix64(stream * 0xD2B74407B1CE6E93ULL + 1))) {}

u64 CounterRng::next_u64() {
    return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * ++ctr_);
}

double CounterRng::next_unit() {
    u64 r = next_u64() >> 12;  // 52 bits: 2r+1 stays exactly representable
    return ((double)(2 * r + 1)) * 0x1p-53;
}

std::vector<double> trajectory(const FourierProfile& profile, const std::vector<u64>& dilations,
                               const std::vector<double>& c, double x, std::size_t upto) {
    if (dilations.size() != c.size())
        throw std::invalid_argument("trajectory: length mismatch");
    if (upto > dilations.size())
        throw std::invalid_argument("trajectory: upto exceeds the sequence length");
    std::vector<double> sums;
    sums.reserve(upto);
    double acc = 0.0;
    for (std::size_t k = 0; k < upto; ++k) {
        double t = (double)dilations[k] * x;
        double term = 0.0;
        switch (profile.kind) {
            case ProfileKind::sine_extremal:
                term = eval_f_alpha_periodic(profile.alpha, t, Parity::sine);
                break;
            case ProfileKind::cosine_extremal:
                term = eval_f_alpha_periodic(profile.alpha, t, Parity::cosine);
                break;
            case ProfileKind::bernoulli:
                term = eval_f1(t);
                break;
            case ProfileKind::custom:
                throw std::invalid_argument("trajectory: custom profiles have no pointwise "
                                            "evaluator");
        }
        acc += c[k] * term;
        sums.push_back(acc);
    }
    return sums;
}

namespace {

// Draw x until no dilation lands on the singular set; the set has measure
// zero, so exhausting the budget signals a misconfiguration.
double draw_nonsingular(CounterRng& rng, const FourierProfile& profile,
                        const std::vector<u64>& dilations, int budget, u64* resamples) {
    for (int attempt = 0; attempt < budget; ++attempt) {
        double x = rng.next_unit();
        bool ok = true;
        if (profile.kind != ProfileKind::bernoulli) {
            for (u64 n : dilations) {
                double t = (double)n * x;
                if (t - std::floor(t) == 0.0) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return x;
        if (resamples) ++*resamples;
    }
    throw std::runtime_error("sampling: resample budget exhausted");
}

template <typename PerSample>
void run_samples(u64 samples, int threads, PerSample&& body) {
    if (threads <= 1) {
        for (u64 s = 0; s < samples; ++s) body(s);
        return;
    }
    std::vector<std::thread> pool;
    u64 chunk = (samples + threads - 1) / (u64)threads;
    for (int t = 0; t < threads; ++t) {
        u64 lo = (u64)t * chunk, hi = std::min(samples, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] {
            for (u64 s = lo; s < hi; ++s) body(s);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

McNorm monte_carlo_norm_sq(const FourierProfile& profile, const std::vector<u64>& dilations,
                           const std::vector<double>& c, const SimulationConfig& config) {
    McNorm out;
    out.samples = config.samples;
    std::vector<double> vals(config.samples);
    std::vector<u64> resamples(config.samples, 0);
    run_samples(config.samples, config.threads, [&](u64 s) {
        CounterRng rng(config.seed, s);
        double x = draw_nonsingular(rng, profile, dilations, config.resample_budget,
                                    &resamples[s]);
        auto traj = trajectory(profile, dilations, c, x, dilations.size());
        vals[s] = traj.back() * traj.back();
    });
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= (double)config.samples;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= std::max<u64>(1, config.samples - 1);
    out.mean_sq = mean;
    out.std_error = std::sqrt(var / (double)config.samples);
    for (u64 r : resamples) out.resamples += r;
    return out;
}

SupSummary sup_tracker(const FourierProfile& profile, const std::vector<u64>& dilations,
                       const std::vector<double>& c, const SimulationConfig& config) {
    SupSummary out;
    out.per_sample_max.resize(config.samples);
    std::vector<double> finals(config.samples);
    std::vector<u64> resamples(config.samples, 0);
    run_samples(config.samples, config.threads, [&](u64 s) {
        CounterRng rng(config.seed, s);
        double x = draw_nonsingular(rng, profile, dilations, config.resample_budget,
                                    &resamples[s]);
        auto traj = trajectory(profile, dilations, c, x, dilations.size());
        double m = 0.0;
        for (double v : traj) m = std::max(m, std::fabs(v));
        out.per_sample_max[s] = m;
        finals[s] = traj.back();
    });
    for (u64 r : resamples) out.resamples += r;
    double msq = 0.0, fsq = 0.0;
    for (u64 s = 0; s < config.samples; ++s) {
        msq += out.per_sample_max[s] * out.per_sample_max[s];
        fsq += finals[s] * finals[s];
    }
    out.mean_max_sq = msq / (double)config.samples;
    out.mean_final_sq = fsq / (double)config.samples;
    std::vector<double> sorted = out.per_sample_max;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
        return sorted[std::min(sorted.size() - 1, (std::size_t)(q * (double)sorted.size()))];
    };
    out.q50 = quantile(0.50);
    out.q90 = quantile(0.90);
    out.q99 = quantile(0.99);
    out.max = sorted.back();
    return out;
}

// ---- coupling internals -----------------------------------------------------

namespace {

std::vector<u64> block_multipliers(const SmoothBlock& b) {
    std::vector<u64> u;
    u.reserve(b.size());
    for (std::size_t mask = 0; mask < b.size(); ++mask) {
        u64 v = 1;
        for (std::size_t r = 0; r < b.primes.size(); ++r)
            if (mask >> r & 1) v *= b.primes[r];
        u.push_back(v);
    }
    std::sort(u.begin(), u.end());
    return u;
}

// Inverse of odd w modulo 2^k (k <= 63), by Newton lifting.
u64 inv_pow2(u64 w, int k) {
    u64 inv = 1;
    for (int bit = 1; bit < k; bit <<= 1) inv *= 2 - w * inv;
    if (k >= 64) return inv;
    return inv & ((u64(1) << k) - 1);
}

// sum_{j >= 1, j u = rho (mod 2m)} j^{-1-alpha}, times sin(pi rho/m) m/(pi u):
// the coherent amplitude of residue rho in the coarsening of f_alpha(u .)
// at m = 2^depth cells.
double residue_weight(double alpha, u64 u, int depth, u64 rho) {
    int b = std::countr_zero(u);
    if (rho & ((u64(1) << b) - 1)) return 0.0;  // no frequency hits this residue
    u64 u_odd = u >> b;
    int step_log = depth + 1 - b;  // step = 2m / 2^b
    u64 step = u64(1) << step_log;
    u64 j0 = (inv_pow2(u_odd, step_log) * (rho >> b)) & (step - 1);
    double x = j0 == 0 ? 1.0 : (double)j0 / (double)step;
    double m = std::ldexp(1.0, depth);
    double zeta = hurwitz_zeta_core(1.0 + alpha, x, 1e-10);
    return std::sin(kPi * (double)rho / m) * (m / (kPi * (double)u)) *
           std::pow((double)step, -1.0 - alpha) * zeta;
}

}  // namespace

// Exact Gram matrix <[f_u]_m, [f_v]_m> over the block multipliers, via the
// orthogonal step-function classes chi_c, c = 1..m/2: class c collects
// residues {c, m-c, m+c, 2m-c} with signs (+,+,-,-) and mass 1/2 (mass 1 at
// c = m/2).  Chunked accumulation keeps the reduction order fixed.
std::vector<std::vector<double>> coarsened_block_gram(double alpha, const std::vector<u64>& us,
                                                      int depth, int threads) {
    const u64 m = u64(1) << depth;
    const std::size_t nu = us.size();
    const u64 half = m / 2;
    const u64 chunk_size = u64(1) << 16;
    const u64 chunks = (half + chunk_size - 1) / chunk_size;
    std::vector<std::vector<double>> partial(chunks,
                                             std::vector<double>(nu * nu, 0.0));

    auto work_chunk = [&](u64 ci) {
        auto& acc = partial[ci];
        std::vector<double> A(nu);
        u64 lo = ci * chunk_size + 1, hi = std::min(half, (ci + 1) * chunk_size);
        for (u64 c = lo; c <= hi; ++c) {
            double nu_c = c == half ? 1.0 : 0.5;
            for (std::size_t i = 0; i < nu; ++i) {
                if (c == half) {
                    A[i] = residue_weight(alpha, us[i], depth, c) -
                           residue_weight(alpha, us[i], depth, m + c);
                } else {
                    A[i] = residue_weight(alpha, us[i], depth, c) +
                           residue_weight(alpha, us[i], depth, m - c) -
                           residue_weight(alpha, us[i], depth, m + c) -
                           residue_weight(alpha, us[i], depth, 2 * m - c);
                }
            }
            for (std::size_t i = 0; i < nu; ++i)
                for (std::size_t j = 0; j < nu; ++j) acc[i * nu + j] += nu_c * A[i] * A[j];
        }
    };

    if (threads <= 1 || chunks == 1) {
        for (u64 ci = 0; ci < chunks; ++ci) work_chunk(ci);
    } else {
        std::vector<std::thread> pool;
        std::atomic<u64> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (u64 ci = next.fetch_add(1); ci < chunks; ci = next.fetch_add(1))
                    work_chunk(ci);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<std::vector<double>> gram(nu, std::vector<double>(nu, 0.0));
    for (u64 ci = 0; ci < chunks; ++ci)
        for (std::size_t i = 0; i < nu; ++i)
            for (std::size_t j = 0; j < nu; ++j) gram[i][j] += partial[ci][i * nu + j];
    return gram;
}

// Closed-form upper bound for || f(u.) - [f(u.)]_m ||^2 at depth D:
// diagonal piece from 1 - sinc^2(z) <= min(1, z^2/3), plus a residue-collision
// bound validated against the exact Gram at accessible depths.
double coarsening_err_sq_upper(double alpha, u64 u, int depth) {
    double m = std::ldexp(1.0, depth);
    double zu = kPi * (double)u / m;
    double jstar = std::max(1.0, std::floor(1.0 / zu));
    double head = zu * zu / 3.0 * std::pow(jstar + 1.0, 3.0 - 2.0 * alpha) /
                  (3.0 - 2.0 * alpha);
    double tail = hurwitz_zeta_core(2.0 * alpha, jstar, 1e-10);
    double cross = (5.1 / ((double)u * (1.0 - alpha) * std::pow(2.0, 1.0 - alpha)) +
                    5.1 * std::pow(2.0, alpha) / (kPi * alpha * (double)u * (double)u)) *
                   std::pow(m, 1.0 - 2.0 * alpha);
    return 0.5 * (head + tail) + cross;
}

namespace {

double exact_pair_inner(double alpha, u64 u, u64 v, double half_zeta) {
    u64 g = gcd_u64(u, v);
    return half_zeta * std::exp(alpha * (2.0 * std::log((double)g) -
                                         (std::log((double)u) + std::log((double)v))));
}

}  // namespace

Coupling couple_independent(const Th2Construction& construction,
                            const SimulationConfig& config) {
    Coupling out;
    out.alpha = construction.alpha;
    out.delta = construction.delta;
    out.d = construction.d;
    int i_max = std::min(config.i_max, construction.i_max);
    int required_depth = construction.S[i_max + 1];
    if (config.grid_depth != 0 && config.grid_depth < required_depth)
        throw std::invalid_argument("couple_independent: grid_depth below S_{i_max+1}");

    double half_zeta = riemann_zeta(2.0 * construction.alpha) / 2.0;
    for (int i = 1; i <= i_max; ++i) {
        const SmoothBlock& blk = construction.blocks[i - 1];
        CoupledBlock cb;
        cb.index = i;
        cb.depth = construction.S[i + 1] - construction.S[i];
        cb.u = block_multipliers(blk);

        auto sums = block_gcd_identity(blk, construction.alpha);
        cb.var_x = half_zeta * sums.closed;

        if (cb.depth <= config.exact_gram_max_depth) {
            auto gram = coarsened_block_gram(construction.alpha, cb.u, cb.depth,
                                             config.threads);
            double var_y = 0.0, err = 0.0;
            for (std::size_t a = 0; a < cb.u.size(); ++a) {
                for (std::size_t b = 0; b < cb.u.size(); ++b) {
                    var_y += gram[a][b];
                    err += exact_pair_inner(construction.alpha, cb.u[a], cb.u[b], half_zeta) -
                           gram[a][b];
                }
            }
            err = std::max(0.0, err);
            cb.err_sq = {err, err};
            cb.var_y = {var_y, var_y};
            cb.exact_gram = true;
        } else {
            double root_sum = 0.0;
            for (u64 u : cb.u)
                root_sum += std::sqrt(coarsening_err_sq_upper(construction.alpha, u, cb.depth));
            double upper = root_sum * root_sum;
            cb.err_sq = {0.0, upper};
            cb.var_y = {cb.var_x - upper, cb.var_x};
            cb.exact_gram = false;
        }

        // E Y_i = E X_i; verified numerically by singular-aware quadrature.
        double gamma_mean = 1.0 - construction.alpha;
        double mean = 0.0;
        for (u64 u : cb.u) {
            std::vector<double> pts;
            for (u64 q = 1; q < u; ++q) pts.push_back((double)q / (double)u);
            auto f = [&](double y) {
                double t = (double)u * y;
                if (t - std::floor(t) == 0.0) return 0.0;
                return eval_f_alpha_periodic(construction.alpha, t);
            };
            mean += integrate_unit_singular(f, std::move(pts), gamma_mean,
                                            1.0 - construction.alpha, config.quad_tol);
        }
        cb.mean_y = mean;

        // E |X_i|^{2+delta} by quadrature; dominates the Y_i moment (the
        // conditional form of Jensen's inequality).
        double p = 2.0 + construction.delta;
        std::vector<double> pts;
        for (u64 u : cb.u)
            for (u64 q = 1; q < u; ++q) pts.push_back((double)q / (double)u);
        double gamma_moment = p * (1.0 - construction.alpha);
        auto f = [&](double y) {
            double s = 0.0;
            for (u64 u : cb.u) {
                double t = (double)u * y;
                if (t - std::floor(t) == 0.0) return 0.0;
                s += eval_f_alpha_periodic(construction.alpha, t);
            }
            return std::pow(std::fabs(s), p);
        };
        cb.moment_x = integrate_unit_singular(f, std::move(pts), gamma_moment,
                                              1.0 - construction.alpha, config.quad_tol);

        out.blocks.push_back(std::move(cb));
    }
    return out;
}

double Coupling::x_value(int i, double y) const {
    const CoupledBlock& cb = blocks.at(i - 1);
    double s = 0.0;
    for (u64 u : cb.u) s += eval_f_alpha_periodic(alpha, (double)u * y);
    return s;
}

double Coupling::y_value(int i, double y) const {
    const CoupledBlock& cb = blocks.at(i - 1);
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("y_value: y must lie in (0,1)");
    int D = cb.depth;
    if (D <= 50) {
        // Exact conditional expectation: antiderivative differences over the
        // cell [l, l+1) / 2^D.  The phase u l 2^{-D} is reduced exactly.
        u64 m = u64(1) << D;
        u64 l = (u64)std::floor(std::ldexp(y, D));
        double h = std::ldexp(1.0, -D);
        double s = 0.0;
        for (u64 u : cb.u) {
            u64 phase_num = (u64)(((unsigned __int128)u * l) & (m - 1));
            double phase = (double)phase_num * h;
            double hi = f_alpha_antiderivative_periodic(alpha, phase + (double)u * h);
            double lo = f_alpha_antiderivative_periodic(alpha, phase);
            s += (hi - lo) / ((double)u * h);
        }
        return s;
    }
    // Cells are far below double resolution: the cell average and the point
    // value agree to rounding except on a set of measure ~2^-45.
    return x_value(i, y);
}

double y_value_at_x(const Coupling& coupling, const Th2Construction& construction, int i,
                    double x) {
    if (construction.S[i] > 50)
        throw std::invalid_argument("y_value_at_x: block lives below double resolution");
    double y = std::ldexp(x, construction.S[i]);
    y -= std::floor(y);
    if (y == 0.0) throw std::domain_error("y_value_at_x: singular base point");
    return coupling.y_value(i, y);
}

CltDiagnostics clt_diagnostics(const Th2Construction& construction, const Coupling& coupling,
                               const SimulationConfig& config) {
    CltDiagnostics out;
    int M = (int)coupling.blocks.size();
    out.block_variance.assign(M + 1, 0.0);
    out.block_moment.assign(M + 1, 0.0);
    out.B.assign(M + 1, 0.0);
    out.D.assign(M + 1, 0.0);
    out.L.assign(M + 1, 0.0);
    double p = 2.0 + coupling.delta;
    for (int i = 1; i <= M; ++i) {
        double di = construction.d[i];
        out.block_variance[i] = di * di * coupling.blocks[i - 1].var_y.mid();
        out.block_moment[i] = std::pow(std::fabs(di), p) * coupling.blocks[i - 1].moment_x;
        out.B[i] = out.B[i - 1] + out.block_variance[i];
        out.D[i] = out.D[i - 1] + out.block_moment[i];
        out.L[i] = out.D[i] / std::pow(out.B[i], 1.0 + coupling.delta / 2.0);
    }

    // Sample Z = sum_i d_i Y_i / sqrt(B_M): the Y_i are independent (each is
    // measurable on its own dyadic refinement and constant across the coarser
    // cells), so per-block uniforms reproduce the joint law.
    double bm = out.B[M];
    double root_b = std::sqrt(bm);
    std::vector<double> z(config.samples);
    run_samples(config.samples, config.threads, [&](u64 s) {
        double acc = 0.0;
        for (int i = 1; i <= M; ++i) {
            CounterRng rng(config.seed, s * 64 + (u64)i);
            double v = 0.0;
            for (int att = 0;; ++att) {
                if (att >= config.resample_budget)
                    throw std::runtime_error("clt_diagnostics: resample budget exhausted");
                double y = rng.next_unit();
                try {
                    v = coupling.y_value(i, y);
                    break;
                } catch (const std::domain_error&) {
                    continue;  // singular base point, redraw
                }
            }
            acc += construction.d[i] * v;
        }
        z[s] = acc / root_b;
    });

    double thresh = root_b / std::max(1.0, std::log((double)M));
    u64 exceed = 0;
    for (double v : z)
        if (std::fabs(v) * root_b >= thresh) ++exceed;
    out.tail_probability = (double)exceed / (double)config.samples;

    out.ks_statistic = ks_statistic_vs_normal(z);
    out.ks_critical = ks_critical_value(0.01, config.samples);
    out.ks_pass = out.ks_statistic <= out.ks_critical;
    out.sample_count = config.samples;
    return out;
}

CesaroResult cesaro_average(const FourierProfile& profile, const std::vector<double>& x_samples,
                            u64 N) {
    if (N < 1) throw std::invalid_argument("cesaro_average: N must be >= 1");
    CesaroResult out;
    out.averages.reserve(x_samples.size());
    for (double x : x_samples) {
        double acc = 0.0;
        for (u64 k = 1; k <= N; ++k) {
            double t = (double)k * x;
            switch (profile.kind) {
                case ProfileKind::sine_extremal:
                    acc += eval_f_alpha_periodic(profile.alpha, t, Parity::sine);
                    break;
                case ProfileKind::cosine_extremal:
                    acc += eval_f_alpha_periodic(profile.alpha, t, Parity::cosine);
                    break;
                case ProfileKind::bernoulli:
                    acc += eval_f1(t);
                    break;
                case ProfileKind::custom:
                    throw std::invalid_argument("cesaro_average: custom profiles have no "
                                                "pointwise evaluator");
            }
        }
        double avg = acc / (double)N;
        out.averages.push_back(avg);
        out.max_abs = std::max(out.max_abs, std::fabs(avg));
    }
    return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double ks_statistic_vs_normal(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = (double)samples.size();
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double cdf = normal_cdf(samples[i]);
        d = std::max(d, cdf - (double)i / n);
        d = std::max(d, (double)(i + 1) / n - cdf);
    }
    return d;
}

double ks_critical_value(double significance, u64 n) {
    double c;
    if (significance == 0.01)
        c = 1.62762;
    else if (significance == 0.05)
        c = 1.35810;
    else
        throw std::invalid_argument("ks_critical_value: tabulated for 0.01 and 0.05 only");
    return c / std::sqrt((double)n);
}

namespace {

void report_inputs(const SimulateRunOptions& opt, FourierProfile& profile,
                   std::vector<u64>& dilations, std::vector<double>& c) {
    profile = FourierProfile::sine(opt.alpha);
    dilations.resize(opt.n);
    c.resize(opt.n);
    for (u64 k = 1; k <= opt.n; ++k) {
        dilations[k - 1] = k;
        c[k - 1] = 1.0 / (double)k;
    }
}

}  // namespace

std::string simulate_report_json(const SimulateRunOptions& opt) {
    FourierProfile profile;
    std::vector<u64> dilations;
    std::vector<double> c;
    report_inputs(opt, profile, dilations, c);

    SimulationConfig config;
    config.seed = opt.seed;
    config.samples = opt.samples;
    config.threads = opt.threads;

    auto mc = monte_carlo_norm_sq(profile, dilations, c, config);
    auto sup = sup_tracker(profile, dilations, c, config);
    double exact = 0.0;
    {
        // zeta(2a)/2 * quadratic form, inline to avoid a dilated.hpp cycle.
        double half_zeta = riemann_zeta(2.0 * opt.alpha) / 2.0;
        double qf = 0.0;
        for (u64 k = 1; k <= opt.n; ++k)
            for (u64 l = 1; l <= opt.n; ++l) {
                u64 g = gcd_u64(k, l);
                qf += c[k - 1] * c[l - 1] *
                      std::exp(opt.alpha * (2.0 * std::log((double)g) -
                                            (std::log((double)k) + std::log((double)l))));
            }
        exact = half_zeta * qf;
    }

    std::vector<double> xs(opt.samples);
    for (u64 s = 0; s < opt.samples; ++s) {
        CounterRng rng(opt.seed, (u64)0x10000 + s);
        xs[s] = rng.next_unit();
    }
    auto ces = cesaro_average(profile, xs, opt.cesaro_n);

    nlohmann::ordered_json j;
    nlohmann::ordered_json cfg;
    cfg["seed"] = opt.seed;
    cfg["samples"] = opt.samples;
    cfg["alpha"] = opt.alpha;
    cfg["n"] = opt.n;
    cfg["cesaro_n"] = opt.cesaro_n;
    cfg["profile"] = "sine_extremal";
    cfg["coefficients"] = "1/k";
    j["config"] = std::move(cfg);

    nlohmann::ordered_json res;
    res["exact_norm_sq"] = exact;
    res["mc_mean_sq"] = mc.mean_sq;
    res["mc_std_error"] = mc.std_error;
    res["mc_within_3se"] = std::fabs(mc.mean_sq - exact) <= 3.0 * mc.std_error;
    res["sup_mean_max_sq"] = sup.mean_max_sq;
    res["sup_q50"] = sup.q50;
    res["sup_q90"] = sup.q90;
    res["sup_q99"] = sup.q99;
    res["sup_max"] = sup.max;
    res["cesaro_max_abs"] = ces.max_abs;
    res["resamples"] = mc.resamples + sup.resamples;
    j["results"] = std::move(res);
    return j.dump(2) + "\n";
}

std::string simulate_trajectories_csv(const SimulateRunOptions& opt) {
    FourierProfile profile;
    std::vector<u64> dilations;
    std::vector<double> c;
    report_inputs(opt, profile, dilations, c);
    std::string out = "sample,M,partial_sum\n";
    char buf[48];
    for (u64 s = 0; s < opt.trajectory_count; ++s) {
        CounterRng rng(opt.seed, s);
        double x = 0.0;
        for (int att = 0; att < 100; ++att) {
            x = rng.next_unit();
            bool ok = true;
            for (u64 nk : dilations) {
                double t = (double)nk * x;
                if (t - std::floor(t) == 0.0) { ok = false; break; }
            }
            if (ok) break;
        }
        auto traj = trajectory(profile, dilations, c, x, dilations.size());
        for (std::size_t mth = 0; mth < traj.size(); ++mth) {
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, traj[mth],
                                         std::chars_format::general, 17);
            out += std::to_string(s) + "," + std::to_string(mth + 1) + "," +
                   std::string(buf, p - buf) + "\n";
        }
    }
    return out;
}

}  // namespace gcdlab
