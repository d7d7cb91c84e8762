#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gcdlab/profile.hpp"
#include "gcdlab/quadrature.hpp"

namespace gcdlab {

struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hurwitz zeta zeta(s, x) for s != 1, x > 0, by Euler-Maclaurin with eight
// Bernoulli correction terms and an adaptive cutoff driven by the remainder
// bound.  Absolute tolerance is clamped at the rounding floor of the partial
// sum; `strict` instead raises AccuracyError when the request is unreachable.
double hurwitz_zeta_core(double s, double x, double tol = 1e-12, bool strict = false);

// Spec-domain evaluation: s in (0,1), x in (0,1).
double hurwitz_zeta(double s, double x, double tol = 1e-12);

// zeta(s) for s > 0, s != 1 (continued through the Hurwitz form at x = 1).
double riemann_zeta(double s);

enum class Parity { sine, cosine };

// f_alpha(x)    = sum_j sin(2 pi j x) / j^alpha   (parity = sine)
// fbar_alpha(x) = sum_j cos(2 pi j x) / j^alpha   (parity = cosine)
// evaluated through the even/odd parts of the Hurwitz zeta function; the
// defining series is only conditionally convergent and is never truncated.
double eval_f_alpha(double alpha, double x, Parity parity = Parity::sine);

// Same, for any real argument, reduced mod 1.  Integer arguments are the
// singular set and raise domain_error.
double eval_f_alpha_periodic(double alpha, double t, Parity parity = Parity::sine);

// f_1(x) = pi (1/2 - {x}), defined for all real x.
double eval_f1(double x);

// Integral of f_alpha from 0 to x, for x in [0, 1].  Extends periodically:
// full periods contribute zero.
double f_alpha_antiderivative(double alpha, double x);
double f_alpha_antiderivative_periodic(double alpha, double t);

// Average of f_alpha(dilation * y) over [a, b] within [0, 1].
double f_alpha_cell_average(double alpha, std::uint64_t dilation, double a, double b);

// Piecewise-constant function on the m-cell uniform partition of [0, 1).
struct PiecewiseConstant {
    std::uint64_t m = 1;
    std::vector<double> values;  // values[l] on [l/m, (l+1)/m)

    double operator()(double x) const;
    double mean() const;
    double norm_sq() const;  // integral of the square over [0,1)
};

// Conditional-expectation coarsening [g]_m.
PiecewiseConstant dyadic_coarsen_f1(std::uint64_t m);
PiecewiseConstant dyadic_coarsen_f_alpha(double alpha, std::uint64_t dilation, std::uint64_t m);
PiecewiseConstant dyadic_coarsen(const Integrand& g, std::uint64_t m, double cell_tol = 1e-10);
// Re-coarsen an already piecewise-constant function at a divisor resolution.
PiecewiseConstant recoarsen(const PiecewiseConstant& g, std::uint64_t m);

// || f_alpha(k .) - [f_alpha(k .)]_m ||_{L^2}, exact up to Hurwitz tolerance
// (Parseval against the cell averages); m capped at 2^22 cells.
double coarsen_error_l2(double alpha, std::uint64_t k, std::uint64_t m);

// L^p norm of f_alpha over (0,1) by singular-endpoint quadrature; requires
// p (1 - alpha) < 1 so the endpoint singularities stay integrable.
double f_alpha_lp_norm(double alpha, double p, double tol = 1e-10);

}  // namespace gcdlab
