#pragma once

#include <functional>
#include <vector>

namespace gcdlab {

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Legendre on [a, b] for integrands smooth in the interior.
double integrate_adaptive(const Integrand& f, double a, double b, double tol);

// Integral over [a, b] where f has an integrable power singularity at one
// endpoint, locally A |x-s|^{-gamma} + B |x-s|^{-(gamma-kappa)} + ... with
// known exponent spacing kappa >= 0.  Dyadic annuli shrink toward the
// endpoint; the sub-resolution remainder is recovered by a three-component
// geometric extrapolation of the annulus masses, which captures the mass
// hiding below one ulp of the endpoint.
double integrate_endpoint_singular(const Integrand& f, double a, double b,
                                   bool singular_at_left, double gamma, double kappa,
                                   double tol);

// Integral over [0, 1) with power singularities of exponent at most gamma
// (component spacing kappa) exactly at the given points (0 and 1 are always
// included).
double integrate_unit_singular(const Integrand& f, std::vector<double> singular_points,
                               double gamma, double kappa, double tol);

}  // namespace gcdlab
