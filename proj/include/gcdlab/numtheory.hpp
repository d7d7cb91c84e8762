#pragma once

#include <cstdint>
#include <vector>

#include "gcdlab/bigint.hpp"
#include "gcdlab/profile.hpp"

namespace gcdlab {

using u64 = std::uint64_t;

// log in the clamped convention: reads log x as max{1, log x}, so iterated
// logarithms stay defined and nonzero.
double clamped_log(double x);
double clamped_log2(double x);

std::vector<u64> primes_up_to(u64 limit);
std::vector<u64> first_primes(int r);
BigUint primorial(int r);

u64 gcd_u64(u64 a, u64 b);  // binary gcd

bool is_prime(u64 n);
// Prime factorization of n >= 1 as (prime, exponent) pairs, ascending.
// Trial division against a cached sieve, Pollard rho beyond its square.
std::vector<std::pair<u64, int>> factorize(u64 n);
std::vector<u64> divisors(u64 n);

// sigma_s(k) = sum over divisors d of k of d^s (real exponent s).
double sigma(double s, u64 k);

// Gronwall envelope exp((1/(1-s)) (log k)^{1-s} / log log k), clamped logs.
double gronwall_bound(double s, u64 k);
double gronwall_bound_from_log(double s, double log_k);

struct WeylFactorParams {
    double alpha;  // in (1/2, 1)
    double K;      // positive
};
enum class WeylVariant { th1, th2 };

// th1: exp(K (log k)^{1-a} / log log k); th2 divides by (log log k)^a instead.
double weyl_factor(const WeylFactorParams& p, u64 k, WeylVariant variant);
double weyl_factor_from_log(const WeylFactorParams& p, double log_k, WeylVariant variant);

// Reference constants for the two convergence-condition weights.
double weyl_constant_th1(double alpha);  // 3/(1-a) + 4/sqrt(2a-1)
double weyl_constant_th2(double alpha);  // 6/(1-a) + 7(|log(2a-1)|^{1/2}+1)

// psi(k) = sum_{d|k} (d g(d) + G(d)) with g(r) = sum_j (a_{jr}^2 + b_{jr}^2)
// and G(r) = sum_{j<=2r} g(j).  The inner sums are truncated at `truncation`
// terms and certified with the j^{-alpha} coefficient-bound tail.
class BewePsi {
public:
    BewePsi(FourierProfile profile, int truncation);
    Enclosure psi(u64 k) const;
    Enclosure g(u64 r) const;
    Enclosure G(u64 r) const;

private:
    FourierProfile profile_;
    int truncation_;
    mutable std::vector<Enclosure> g_cache_;  // g_cache_[r] = g(r), index 0 unused
    mutable std::vector<Enclosure> G_cache_;
    void ensure(u64 r) const;
};

Enclosure bewe_psi(const FourierProfile& profile, u64 k, int truncation);

}  // namespace gcdlab
