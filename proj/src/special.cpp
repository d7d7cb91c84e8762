#include "gcdlab/special.hpp"

#include <cmath>
#include <numbers>

namespace gcdlab {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k}/(2k)! for k = 1..8, plus the k = 9 coefficient for the remainder.
constexpr double kBernFact[] = {
    8.3333333333333333e-02,   // B2/2!
    -1.3888888888888889e-03,  // B4/4!
    3.3068783068783069e-05,   // B6/6!
    -8.2671957671957672e-07,  // B8/8!
    2.0876756987868099e-08,   // B10/10!
    -5.2841901386874932e-10,  // B12/12!
    1.3382536530684679e-11,   // B14/14!
    -3.3896802963225829e-13,  // B16/16!
};
constexpr double kBernFactNext = 8.5860620562778446e-15;  // B18/18!
constexpr int kOrder = 8;

// Remainder bound for the Euler-Maclaurin truncation after kOrder terms:
// |R| <= |B_{2K+2}/(2K+2)!| * |(s)_{2K+1}| * (M+x)^{-s-2K-1} for real s.
double em_remainder_bound(double s, double mx) {
    double rising = 1.0;
    for (int i = 0; i < 2 * kOrder + 1; ++i) rising *= std::fabs(s + i);
    return std::fabs(kBernFactNext) * rising * std::pow(mx, -s - 2 * kOrder - 1);
}

}  // namespace

double hurwitz_zeta_core(double s, double x, double tol, bool strict) {
    if (x <= 0.0) throw std::domain_error("hurwitz_zeta: x must be positive");
    if (s == 1.0) throw std::domain_error("hurwitz_zeta: s = 1 is the pole");
    if (s < -13.0 || s > 60.0)
        throw std::domain_error("hurwitz_zeta: s outside supported range");
    if (tol <= 0.0) throw std::invalid_argument("hurwitz_zeta: tolerance must be positive");

    int m = std::max({8, (int)std::ceil(std::fabs(s)), (int)std::ceil(2.0 - x)});
    while (em_remainder_bound(s, m + x) > tol && m < (1 << 22)) m *= 2;

    double sum = 0.0, comp = 0.0, mag = 0.0;
    for (int n = 0; n < m; ++n) {
        double term = std::pow(n + x, -s);
        mag += std::fabs(term);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double mx = m + x;
    sum += std::pow(mx, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(mx, -s);
    double rising = s;  // (s)_{2k-1} built incrementally
    double power = std::pow(mx, -s - 1.0);
    for (int k = 0; k < kOrder; ++k) {
        sum += kBernFact[k] * rising * power;
        rising *= (s + 2 * k + 1) * (s + 2 * k + 2);
        power /= mx * mx;
    }
    double floor = 8.0 * 2.220446049250313e-16 * (mag + std::fabs(sum));
    if (strict && tol < floor)
        throw AccuracyError("hurwitz_zeta: tolerance unreachable at double precision");
    return sum;
}

double hurwitz_zeta(double s, double x, double tol) {
    if (!(s > 0.0 && s < 1.0))
        throw std::domain_error("hurwitz_zeta: s must lie in (0, 1)");
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("hurwitz_zeta: x must lie in (0, 1)");
    return hurwitz_zeta_core(s, x, tol, true);
}

double riemann_zeta(double s) {
    return hurwitz_zeta_core(s, 1.0, 1e-14);
}

double eval_f_alpha(double alpha, double x, Parity parity) {
    FourierProfile::require_alpha(alpha);
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("eval_f_alpha: x must lie in (0, 1); the function is "
                                "unbounded at integers");
    double s = 1.0 - alpha;
    double za = hurwitz_zeta_core(s, x);
    double zb = hurwitz_zeta_core(s, 1.0 - x);
    double scale = std::pow(2.0 * kPi, alpha) / (4.0 * std::tgamma(alpha));
    if (parity == Parity::sine) return scale * (za - zb) / std::sin(kPi * alpha / 2.0);
    return scale * (za + zb) / std::cos(kPi * alpha / 2.0);
}

double eval_f_alpha_periodic(double alpha, double t, Parity parity) {
    double x = t - std::floor(t);
    if (x == 0.0)
        throw std::domain_error("eval_f_alpha_periodic: integer argument hits the singularity");
    return eval_f_alpha(alpha, x, parity);
}

double eval_f1(double x) {
    return kPi * (0.5 - (x - std::floor(x)));
}

// fbar_{1+alpha}(x) = sum_j cos(2 pi j x)/j^{1+alpha}, through zeta(-alpha, .).
// Absolutely convergent, continuous on [0,1] with value zeta(1+alpha) at 0, 1.
static double fbar_one_plus_alpha(double alpha, double x) {
    if (x == 0.0 || x == 1.0) return riemann_zeta(1.0 + alpha);
    double za = hurwitz_zeta_core(-alpha, x);
    double zb = hurwitz_zeta_core(-alpha, 1.0 - x);
    double scale = std::pow(2.0 * kPi, 1.0 + alpha) / (4.0 * std::tgamma(1.0 + alpha));
    return -scale * (za + zb) / std::sin(kPi * alpha / 2.0);
}

double f_alpha_antiderivative(double alpha, double x) {
    FourierProfile::require_alpha(alpha);
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("f_alpha_antiderivative: x must lie in [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return (riemann_zeta(1.0 + alpha) - fbar_one_plus_alpha(alpha, x)) / (2.0 * kPi);
}

double f_alpha_antiderivative_periodic(double alpha, double t) {
    return f_alpha_antiderivative(alpha, t - std::floor(t));
}

double f_alpha_cell_average(double alpha, std::uint64_t dilation, double a, double b) {
    if (!(b > a)) throw std::invalid_argument("f_alpha_cell_average: empty cell");
    double d = (double)dilation;
    // Full periods swept by the cell integrate to zero, so the periodic
    // antiderivative difference is the whole integral.
    double hi = f_alpha_antiderivative_periodic(alpha, d * b);
    double lo = f_alpha_antiderivative_periodic(alpha, d * a);
    return (hi - lo) / (d * (b - a));
}

double PiecewiseConstant::operator()(double x) const {
    double frac = x - std::floor(x);
    auto idx = (std::uint64_t)(frac * (double)m);
    if (idx >= m) idx = m - 1;
    return values[idx];
}

double PiecewiseConstant::mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / (double)m;
}

double PiecewiseConstant::norm_sq() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s / (double)m;
}

PiecewiseConstant dyadic_coarsen_f1(std::uint64_t m) {
    if (m < 1) throw std::invalid_argument("dyadic_coarsen: m must be >= 1");
    PiecewiseConstant out{m, {}};
    out.values.resize(m);
    // f1 is linear on each cell, so the average is the midpoint value.
    for (std::uint64_t l = 0; l < m; ++l)
        out.values[l] = kPi * (0.5 - ((double)l + 0.5) / (double)m);
    return out;
}

PiecewiseConstant dyadic_coarsen_f_alpha(double alpha, std::uint64_t dilation,
                                         std::uint64_t m) {
    if (m < 1) throw std::invalid_argument("dyadic_coarsen: m must be >= 1");
    if (m > (1u << 22)) throw std::invalid_argument("dyadic_coarsen: m too large to materialize");
    PiecewiseConstant out{m, {}};
    out.values.resize(m);
    double d = (double)dilation;
    double inv = (double)m / d;
    double prev = 0.0;
    for (std::uint64_t l = 0; l < m; ++l) {
        double next = f_alpha_antiderivative_periodic(alpha, d * (double)(l + 1) / (double)m);
        out.values[l] = (next - prev) * inv;
        prev = next;
    }
    return out;
}

PiecewiseConstant dyadic_coarsen(const Integrand& g, std::uint64_t m, double cell_tol) {
    if (m < 1) throw std::invalid_argument("dyadic_coarsen: m must be >= 1");
    if (m > (1u << 22)) throw std::invalid_argument("dyadic_coarsen: m too large to materialize");
    PiecewiseConstant out{m, {}};
    out.values.resize(m);
    for (std::uint64_t l = 0; l < m; ++l) {
        double a = (double)l / (double)m, b = (double)(l + 1) / (double)m;
        out.values[l] = integrate_adaptive(g, a, b, cell_tol) * (double)m;
    }
    return out;
}

PiecewiseConstant recoarsen(const PiecewiseConstant& g, std::uint64_t m) {
    if (m < 1 || g.m % m != 0)
        throw std::invalid_argument("recoarsen: m must divide the source resolution");
    PiecewiseConstant out{m, {}};
    out.values.resize(m);
    std::uint64_t ratio = g.m / m;
    for (std::uint64_t l = 0; l < m; ++l) {
        double s = 0.0;
        for (std::uint64_t i = 0; i < ratio; ++i) s += g.values[l * ratio + i];
        out.values[l] = s / (double)ratio;
    }
    return out;
}

double coarsen_error_l2(double alpha, std::uint64_t k, std::uint64_t m) {
    auto coarse = dyadic_coarsen_f_alpha(alpha, k, m);
    double full = riemann_zeta(2.0 * alpha) / 2.0;
    double diff_sq = full - coarse.norm_sq();
    return std::sqrt(std::max(0.0, diff_sq));
}

double f_alpha_lp_norm(double alpha, double p, double tol) {
    FourierProfile::require_alpha(alpha);
    if (!(p > 0.0) || p * (1.0 - alpha) >= 1.0)
        throw std::domain_error("f_alpha_lp_norm: need p (1 - alpha) < 1");
    // |f_alpha|^p blows up like |x - s|^{-p(1-alpha)} at the endpoints.
    double gamma = p * (1.0 - alpha);
    auto integrand = [&](double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return std::pow(std::fabs(eval_f_alpha(alpha, x)), p);
    };
    double integral = integrate_unit_singular(integrand, {}, gamma, 1.0 - alpha, tol);
    return std::pow(integral, 1.0 / p);
}

}  // namespace gcdlab
