#pragma once

#include <cstdint>
#include <vector>

#include "gcdlab/gcd_spectra.hpp"
#include "gcdlab/profile.hpp"
#include "gcdlab/rational.hpp"

namespace gcdlab {

struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

enum class NormMethod { exact_gcd, parseval_truncated, quadrature };

struct NormEnclosure {
    double lower = 0.0;
    double upper = 0.0;
    NormMethod method = NormMethod::exact_gcd;

    bool contains(double v) const { return lower <= v && v <= upper; }
    double mid() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
};

// integral over (0,1) of f(m x) f(n x) for the profile's f; closed form for
// the named profiles, certified truncated coefficient sum otherwise.
NormEnclosure inner_product(const FourierProfile& profile, u64 m, u64 n, int truncation = 4096);

// Exact rational integral of ({kx}-1/2)({lx}-1/2): evaluated both as the
// closed form gcd(k,l)^2/(12 k l) and by exact piecewise-quadratic
// integration over the breakpoint grid; the two must agree bit-for-bit.
Rational franel_exact(u64 k, u64 l);

// || sum_k c_k f(n_k x) ||_{L^2}^2.
NormEnclosure norm_squared(const FourierProfile& profile, const std::vector<u64>& dilations,
                           const std::vector<double>& c);

// Independent Parseval-side oracle: aggregates coefficients of the dilated
// sum up to frequency J and certifies the tail from the j^{-alpha} bound.
NormEnclosure parseval_norm(const FourierProfile& profile, const std::vector<u64>& dilations,
                            const std::vector<double>& c, u64 J);

// Pointwise evaluation of sum_k c_k f(n_k x) (profile must be evaluable:
// sine/cosine extremal or bernoulli).
double dilated_sum_value(const FourierProfile& profile, const std::vector<u64>& dilations,
                         const std::vector<double>& c, double x);

// Singular-aware quadrature of the squared dilated sum (second oracle).
double norm_squared_quadrature(const FourierProfile& profile, const std::vector<u64>& dilations,
                               const std::vector<double>& c, double tol = 1e-9);

// lhs = sum_{k,l=M}^{N} |c_k c_l| gcd(k,l)^{2a}/(kl)^a,
// rhs = sum_{k=M}^{N^2} c_k^2 sigma_{1-2a+eps}(k); c is 1-based via c[k-1].
std::pair<double, double> sigma_weighted_bound(const std::vector<double>& c, double alpha,
                                               double eps, u64 M, u64 N);

}  // namespace gcdlab
