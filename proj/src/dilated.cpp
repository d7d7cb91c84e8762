#include "gcdlab/dilated.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gcdlab/special.hpp"

namespace gcdlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

i128 gcd_i128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

void Rational::normalize() {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd_i128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational{num * o.den + o.num * den, den * o.den};
}
Rational Rational::operator-(const Rational& o) const {
    return Rational{num * o.den - o.num * den, den * o.den};
}
Rational Rational::operator*(const Rational& o) const {
    return Rational{num * o.num, den * o.den};
}

std::string Rational::to_string() const {
    auto render = [](i128 v) {
        bool neg = v < 0;
        if (neg) v = -v;
        std::string s;
        do {
            s.push_back(char('0' + (int)(v % 10)));
            v /= 10;
        } while (v);
        if (neg) s.push_back('-');
        std::reverse(s.begin(), s.end());
        return s;
    };
    if (den == 1) return render(num);
    return render(num) + "/" + render(den);
}

Rational franel_exact(u64 k, u64 l) {
    if (k < 1 || l < 1) throw std::invalid_argument("franel_exact: k, l must be >= 1");
    if (k > 10000 || l > 10000)
        throw std::invalid_argument("franel_exact: arguments capped at 10^4");

    u64 g = gcd_u64(k, l);
    Rational closed{(i128)(g * g), (i128)12 * k * l};

    // Exact piecewise integration: breakpoints of {kx} and {lx} as multiples
    // of 1/L with L = lcm(k, l); between consecutive breakpoints both factors
    // are linear, so the product integrates as a quadratic in closed form.
    u64 L = k / g * l;
    u64 sk = L / k, sl = L / l;
    std::vector<u64> pts;
    pts.reserve(k + l + 2);
    for (u64 a = 0; a * sk <= L; ++a) pts.push_back(a * sk);
    for (u64 b = 0; b * sl <= L; ++b) pts.push_back(b * sl);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // Fixed denominator 12 L^3 keeps the accumulation in pure integers.
    i128 acc = 0;
    i128 Li = (i128)L;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        i128 p0 = (i128)pts[i], p1 = (i128)pts[i + 1];
        // floor(k x) and floor(l x) on the open interval, via the midpoint.
        i128 A = (i128)k * (p0 + p1) / (2 * Li);
        i128 B = (i128)l * (p0 + p1) / (2 * Li);
        i128 u = 2 * A + 1, w = 2 * B + 1;
        i128 d3 = p1 * p1 * p1 - p0 * p0 * p0;
        i128 d2 = p1 * p1 - p0 * p0;
        i128 d1 = p1 - p0;
        acc += 4 * (i128)k * (i128)l * d3 - 3 * ((i128)k * w + (i128)l * u) * d2 * Li +
               3 * u * w * d1 * Li * Li;
    }
    Rational direct{acc, 12 * Li * Li * Li};

    if (!(direct == closed))
        throw InvariantViolation("franel_exact: piecewise integration disagrees with the "
                                 "closed form for k=" + std::to_string(k) +
                                 ", l=" + std::to_string(l));
    return closed;
}

namespace {

double zeta_tail(double two_alpha, double from) {
    // sum_{j > from} j^{-2a} = zeta(2a, from + 1)
    return hurwitz_zeta_core(two_alpha, from + 1.0, 1e-13);
}

}  // namespace

NormEnclosure inner_product(const FourierProfile& profile, u64 m, u64 n, int truncation) {
    if (m < 1 || n < 1) throw std::invalid_argument("inner_product: m, n must be >= 1");
    u64 g = gcd_u64(m, n);
    double a = profile.alpha;
    switch (profile.kind) {
        case ProfileKind::sine_extremal:
        case ProfileKind::cosine_extremal: {
            double v = riemann_zeta(2.0 * a) / 2.0 *
                       std::exp(a * (2.0 * std::log((double)g) -
                                     (std::log((double)m) + std::log((double)n))));
            return {v, v, NormMethod::exact_gcd};
        }
        case ProfileKind::bernoulli: {
            double v = kPi * kPi / 12.0 * (double)g * (double)g / ((double)m * (double)n);
            return {v, v, NormMethod::exact_gcd};
        }
        case ProfileKind::custom:
            break;
    }
    if (truncation < 1) throw std::invalid_argument("inner_product: truncation must be >= 1");
    u64 mg = m / g, ng = n / g;
    double partial = 0.0;
    for (int j = 1; j <= truncation; ++j) {
        auto [am, bm] = profile.coeff((u64)j * mg);
        auto [an, bn] = profile.coeff((u64)j * ng);
        partial += 0.5 * (am * an + bm * bn);
    }
    double C = profile.bound_constant;
    double tail = C * C * std::pow((double)(mg * ng), -a) * zeta_tail(2.0 * a, truncation);
    return {partial - tail, partial + tail, NormMethod::parseval_truncated};
}

NormEnclosure norm_squared(const FourierProfile& profile, const std::vector<u64>& dilations,
                           const std::vector<double>& c) {
    if (dilations.size() != c.size())
        throw std::invalid_argument("norm_squared: length mismatch");
    double a = profile.alpha;
    switch (profile.kind) {
        case ProfileKind::sine_extremal:
        case ProfileKind::cosine_extremal: {
            GcdMatrixSpec spec{a, dilations};
            double v = riemann_zeta(2.0 * a) / 2.0 * quadratic_form(spec, c);
            return {v, v, NormMethod::exact_gcd};
        }
        case ProfileKind::bernoulli: {
            GcdMatrixSpec spec{1.0, dilations};
            double v = kPi * kPi / 12.0 * quadratic_form(spec, c);
            return {v, v, NormMethod::exact_gcd};
        }
        case ProfileKind::custom:
            break;
    }
    u64 maxdil = *std::max_element(dilations.begin(), dilations.end());
    u64 J = std::max<u64>(4096, 4 * maxdil);
    NormEnclosure parseval = parseval_norm(profile, dilations, c, J);
    // Koksma-style domination: |<f(m.), f(n.)>| <= C^2 zeta(2a) gcd-entry.
    GcdMatrixSpec spec{a, dilations};
    std::vector<double> abs_c(c.size());
    for (size_t i = 0; i < c.size(); ++i) abs_c[i] = std::fabs(c[i]);
    double koksma = profile.bound_constant * profile.bound_constant * riemann_zeta(2.0 * a) *
                    quadratic_form(spec, abs_c);
    return {parseval.lower, std::min(parseval.upper, koksma), NormMethod::parseval_truncated};
}

NormEnclosure parseval_norm(const FourierProfile& profile, const std::vector<u64>& dilations,
                            const std::vector<double>& c, u64 J) {
    if (dilations.size() != c.size())
        throw std::invalid_argument("parseval_norm: length mismatch");
    u64 maxdil = *std::max_element(dilations.begin(), dilations.end());
    if (J < maxdil)
        throw std::invalid_argument("parseval_norm: J must reach the largest dilation");
    std::vector<double> A(J + 1, 0.0), B(J + 1, 0.0);
    for (size_t idx = 0; idx < dilations.size(); ++idx) {
        u64 nk = dilations[idx];
        if (c[idx] == 0.0) continue;
        for (u64 j = nk; j <= J; j += nk) {
            auto [aj, bj] = profile.coeff(j / nk);
            A[j] += c[idx] * aj;
            B[j] += c[idx] * bj;
        }
    }
    double partial = 0.0, comp = 0.0;
    for (u64 j = 1; j <= J; ++j) {
        double term = 0.5 * (A[j] * A[j] + B[j] * B[j]);
        double y = term - comp;
        double t = partial + y;
        comp = (t - partial) - y;
        partial = t;
    }
    // |A_j| <= C j^{-a} sum_k |c_k| n_k^a, likewise B_j, hence the tail bound
    // (sum C |c_k| n_k^a)^2 J^{1-2a}/(2a-1) covering both square sums.
    double a = profile.alpha;
    double mass = 0.0;
    for (size_t idx = 0; idx < dilations.size(); ++idx)
        mass += profile.bound_constant * std::fabs(c[idx]) * std::pow((double)dilations[idx], a);
    double tail = mass * mass * std::pow((double)J, 1.0 - 2.0 * a) / (2.0 * a - 1.0);
    return {partial, partial + tail, NormMethod::parseval_truncated};
}

double dilated_sum_value(const FourierProfile& profile, const std::vector<u64>& dilations,
                         const std::vector<double>& c, double x) {
    if (dilations.size() != c.size())
        throw std::invalid_argument("dilated_sum_value: length mismatch");
    double s = 0.0;
    for (size_t i = 0; i < dilations.size(); ++i) {
        if (c[i] == 0.0) continue;
        double t = (double)dilations[i] * x;
        switch (profile.kind) {
            case ProfileKind::sine_extremal:
                s += c[i] * eval_f_alpha_periodic(profile.alpha, t, Parity::sine);
                break;
            case ProfileKind::cosine_extremal:
                s += c[i] * eval_f_alpha_periodic(profile.alpha, t, Parity::cosine);
                break;
            case ProfileKind::bernoulli:
                s += c[i] * eval_f1(t);
                break;
            case ProfileKind::custom:
                throw std::invalid_argument("dilated_sum_value: custom profiles have no "
                                            "pointwise evaluator");
        }
    }
    return s;
}

double norm_squared_quadrature(const FourierProfile& profile, const std::vector<u64>& dilations,
                               const std::vector<double>& c, double tol) {
    // Singular points are the rationals q/n_k; the squared sum behaves like
    // |x - s|^{2(alpha-1)} there, handled by the graded substitution.
    std::vector<double> pts;
    for (u64 nk : dilations)
        for (u64 q = 1; q < nk; ++q) pts.push_back((double)q / (double)nk);
    double a = profile.alpha;
    double gamma = 2.0 * (1.0 - a);  // squared sums blow up like |x-s|^{-gamma}
    auto integrand = [&](double x) {
        // Points that round onto the measure-zero singular set contribute
        // nothing; skip them rather than evaluating at the pole.
        for (u64 nk : dilations) {
            double t = (double)nk * x;
            if (t - std::floor(t) == 0.0) return 0.0;
        }
        double v = dilated_sum_value(profile, dilations, c, x);
        return v * v;
    };
    return integrate_unit_singular(integrand, std::move(pts), gamma, 1.0 - a, tol);
}

std::pair<double, double> sigma_weighted_bound(const std::vector<double>& c, double alpha,
                                               double eps, u64 M, u64 N) {
    if (!(1.0 - 2.0 * alpha + eps < 0.0))
        throw std::invalid_argument("sigma_weighted_bound: need 1 - 2 alpha + eps < 0");
    if (M < 1 || M > N || c.size() < N)
        throw std::invalid_argument("sigma_weighted_bound: need 1 <= M <= N <= len(c)");
    double lhs = 0.0;
    for (u64 k = M; k <= N; ++k) {
        if (c[k - 1] == 0.0) continue;
        for (u64 l = M; l <= N; ++l) {
            if (c[l - 1] == 0.0) continue;
            u64 g = gcd_u64(k, l);
            lhs += std::fabs(c[k - 1] * c[l - 1]) *
                   std::exp(alpha * (2.0 * std::log((double)g) -
                                     (std::log((double)k) + std::log((double)l))));
        }
    }
    double s = 1.0 - 2.0 * alpha + eps;
    double rhs = 0.0;
    for (u64 k = M; k <= N; ++k)
        if (c[k - 1] != 0.0) rhs += c[k - 1] * c[k - 1] * sigma(s, k);
    return {lhs, rhs};
}

}  // namespace gcdlab
