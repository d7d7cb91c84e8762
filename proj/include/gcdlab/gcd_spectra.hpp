#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gcdlab/numtheory.hpp"

namespace gcdlab {

// alpha plus a dilation sequence; the identity sequence 1..N gives G_N, a
// general strictly increasing sequence gives H_N.  Entries are
// gcd(n_k, n_l)^{2 alpha} / (n_k n_l)^alpha.
struct GcdMatrixSpec {
    double alpha = 0.75;          // in (1/2, 1]; alpha = 1 is the Franel case
    std::vector<u64> dilations;   // strictly increasing, distinct, >= 1

    std::size_t size() const { return dilations.size(); }
    static GcdMatrixSpec identity(double alpha, std::size_t n);
    void validate() const;
};

double gcd_entry(const GcdMatrixSpec& spec, std::size_t k, std::size_t l);

// c^T G c by direct O(N^2) accumulation with per-row compensated sums.
double quadratic_form(const GcdMatrixSpec& spec, const std::vector<double>& c);

struct SpectralResult {
    double lambda = 0.0;     // largest-eigenvalue estimate (Rayleigh quotient)
    double residual = 0.0;   // ||Av - lambda v|| / ||v||
    int iterations = 0;
    double lower = 0.0;      // Rayleigh quotient, always a valid lower bound
    double upper = 0.0;      // lambda + residual
    bool converged = false;
    std::vector<double> eigenvector;  // one maximizer (top eigenvalue may be multiple)
};

// Matrix-free power iteration with Rayleigh-quotient estimates; entries are
// generated on the fly, rows accumulated in fixed order and parallelized so
// results do not depend on the worker count.
SpectralResult largest_eigenvalue(const GcdMatrixSpec& spec, double residual_tol = 1e-10,
                                  int max_iterations = 100000, int threads = 0,
                                  const std::vector<double>* warm_start = nullptr);

// Smallest eigenvalue through a full cyclic-Jacobi eigendecomposition of the
// dense matrix; N is capped (default 512) to keep the solve in seconds.
SpectralResult min_eigenvalue(const GcdMatrixSpec& spec, std::size_t dense_limit = 512);

// All eigenvalues by cyclic Jacobi, ascending (dense oracle path).
std::vector<double> jacobi_eigenvalues(const GcdMatrixSpec& spec, std::size_t dense_limit = 512);

// sum_{k <= N^2} bhat_k^2 with bhat_k = k^{-alpha} sum_{d | k, d >= M} d^alpha |c_d|,
// accumulated sieve-style over divisors and their multiples.
double hilberdink_majorant(const std::vector<double>& c, double alpha, u64 M);

// Row-major CSV dump with 17 significant digits.
void write_matrix_csv(const GcdMatrixSpec& spec, std::ostream& out);

}  // namespace gcdlab
