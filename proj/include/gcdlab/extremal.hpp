#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcdlab/bigint.hpp"
#include "gcdlab/numtheory.hpp"

namespace gcdlab {

// One block of squarefree-smooth integers: 2^{two_exponent} * prod p_r^{w_r}
// over all w in {0,1}^{prime count}.  Elements are stored factored (the
// subset mask is the exponent vector), so gcds reduce to bit operations and
// logarithms are exact sums; the integer value is kept alongside for
// serialization and ordering.
struct SmoothBlock {
    int index = 1;            // block number i
    int two_exponent = 0;     // power of two shared by every element
    std::vector<u64> primes;  // basis p_1..p_A (first primes, so p_1 = 2)
    std::vector<BigUint> values;     // element values, mask order
    std::vector<double> log_values;  // exact logs from the factorization
    std::vector<double> coeffs;      // c_k per element (Th1) or constant (Th2)

    std::size_t size() const { return values.size(); }
};

struct Th1Construction {
    double alpha = 0.75;
    double eps = 0.1;
    double eta = 0.0;  // (1 - 2 eps)/(1 + eps)
    int i_max = 1;
    std::vector<SmoothBlock> blocks;
};

struct Th2Construction {
    double alpha = 0.75;
    double beta = 0.3;
    double delta = 1.0;
    double K1 = 1.0;
    double eta = 24.0;  // 12/(2 alpha - 1)
    int i_max = 1;
    std::vector<int> A, S, T;  // schedule, 1-based at [i]
    std::vector<SmoothBlock> blocks;
    std::vector<double> d;  // per-block coefficient d_i, 1-based at [i]

    // Flattened dilation sequence (n_k) ascending with Gamma_i index ranges.
    std::vector<const BigUint*> flattened;
    std::vector<std::pair<std::size_t, std::size_t>> gamma;  // [begin, end) per block
};

// Default parameter choices kept strictly inside the open conditions.
double th2_default_delta(double alpha);               // midpoint of (0, 1/(1-a) - 2)
double th2_default_beta(double delta);                // 0.9 * delta/(2+delta)
double th2_default_k1(double alpha, double margin);   // ((2a-1)/(2a log 2))^{1-a}/(1-a) - margin

// Blocks Delta_i = {2^{2i} p_1^{w_1} ... p_i^{w_i}}, coefficients
// c_k = 2^{-i/2} i^{-1} exp(-(eta/(2(1-a))) (log k)^{1-a}/log log k).
Th1Construction th1_blocks(double alpha, double eps, int i_max);

// Recursive schedule S_1 = 2, T_i = S_i + ceil(log2 primorial(A(i))),
// S_{i+1} = T_i + ceil(eta log2 i) with A(i) = ceil(beta log2 i), A(1) = 1.
Th2Construction th2_construction(double alpha, double beta, double K1, int i_max,
                                 double delta = -1.0);

// Direct pairwise block GCD sum versus the closed form |Delta| prod(1 + p^-a).
struct BlockGcdSums {
    double direct = 0.0;
    double closed = 0.0;
};
BlockGcdSums block_gcd_identity(const SmoothBlock& block, double alpha);

// Quadratic form sum_{u,v in Delta_i} c_u c_v gcd(u,v)^{2a}/(uv)^a evaluated
// through the tensor-product structure of the block in O(i 2^i).
double block_quadratic_form(const SmoothBlock& block, double alpha);

// Per-element Weyl-weighted mass sum_{k in Delta_i} c_k^2 W(k); equals i^{-2}
// identically for Th1 blocks.
double th1_block_weyl_mass(const Th1Construction& c, const SmoothBlock& block);

// Cumulative exact per-block norm contributions zeta(2a)/2 * (block form).
std::vector<double> divergence_partial_sums(const Th1Construction& c, int M);
std::vector<double> divergence_partial_sums(const Th2Construction& c, int M);

// Documented JSON layouts (schedule, factored elements, coefficients).
std::string to_json(const Th1Construction& c, int indent = 2);
std::string to_json(const Th2Construction& c, int indent = 2);

}  // namespace gcdlab
