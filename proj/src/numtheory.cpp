#include "gcdlab/numtheory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

namespace gcdlab {

double clamped_log(double x) { return std::max(1.0, std::log(x)); }
double clamped_log2(double x) { return std::max(1.0, std::log2(x)); }

namespace {

constexpr u64 kSieveLimit = 10'000'000;

std::vector<u64> sieve_primes(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (u64 p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (u64 q = p * p; q <= limit; q += p) composite[q] = true;
    }
    return primes;
}

// Cached sieve up to 1e7, built once.  GCDLAB_SIEVE_CACHE, when set, names a
// directory holding a binary dump so repeated CLI runs skip the rebuild.
const std::vector<u64>& cached_primes() {
    static std::vector<u64> primes;
    static std::once_flag once;
    std::call_once(once, [] {
        const char* dir = std::getenv("GCDLAB_SIEVE_CACHE");
        std::string path;
        if (dir) {
            path = std::string(dir) + "/gcdlab_primes_1e7.bin";
            if (FILE* f = std::fopen(path.c_str(), "rb")) {
                u64 count = 0;
                if (std::fread(&count, sizeof count, 1, f) == 1 && count > 0 &&
                    count < kSieveLimit) {
                    primes.resize(count);
                    if (std::fread(primes.data(), sizeof(u64), count, f) != count)
                        primes.clear();
                }
                std::fclose(f);
            }
        }
        if (primes.empty()) {
            primes = sieve_primes(kSieveLimit);
            if (dir) {
                if (FILE* f = std::fopen(path.c_str(), "wb")) {
                    u64 count = primes.size();
                    std::fwrite(&count, sizeof count, 1, f);
                    std::fwrite(primes.data(), sizeof(u64), count, f);
                    std::fclose(f);
                }
            }
        }
    });
    return primes;
}

u64 mulmod(u64 a, u64 b, u64 m) {
    return (u64)((unsigned __int128)a * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    u64 x = 2, y = 2, c = 1, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (true) {
        x = 2;
        y = 2;
        d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            u64 diff = x > y ? x - y : y - x;
            d = gcd_u64(diff, n);
        }
        if (d != n) return d;
        ++c;  // cycle collapsed, retry with a new polynomial
    }
}

}  // namespace

u64 gcd_u64(u64 a, u64 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = std::countr_zero(a | b);
    a >>= std::countr_zero(a);
    while (b != 0) {
        b >>= std::countr_zero(b);
        if (a > b) std::swap(a, b);
        b -= a;
    }
    return a << shift;
}

std::vector<u64> primes_up_to(u64 limit) {
    if (limit < 2) return {};
    const auto& cached = cached_primes();
    if (limit <= kSieveLimit) {
        auto it = std::upper_bound(cached.begin(), cached.end(), limit);
        return {cached.begin(), it};
    }
    return sieve_primes(limit);
}

std::vector<u64> first_primes(int r) {
    if (r <= 0) return {};
    const auto& cached = cached_primes();
    if ((size_t)r <= cached.size()) return {cached.begin(), cached.begin() + r};
    // p_r < r (log r + log log r) for r >= 6; pad for safety.
    double rr = (double)r;
    u64 bound = (u64)(rr * (std::log(rr) + std::log(std::log(rr))) * 1.2) + 16;
    auto primes = sieve_primes(bound);
    primes.resize(r);
    return primes;
}

BigUint primorial(int r) {
    if (r < 1) throw std::invalid_argument("primorial: r must be >= 1");
    BigUint result{1};
    for (u64 p : first_primes(r)) result.mul_u64(p);
    return result;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Deterministic Miller-Rabin base set for 64-bit integers.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!miller_rabin(n, a)) return false;
    return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<std::pair<u64, int>> factors;
    for (u64 p : cached_primes()) {
        if (p * p > n) break;
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        factors.emplace_back(p, e);
    }
    // Leftover cofactor is 1, a prime, or a semiprime beyond the sieve range.
    std::vector<u64> hard;
    if (n > 1) hard.push_back(n);
    while (!hard.empty()) {
        u64 m = hard.back();
        hard.pop_back();
        if (m <= kSieveLimit || is_prime(m)) {
            int e = 0;
            auto it = std::find_if(factors.begin(), factors.end(),
                                   [&](auto& f) { return f.first == m; });
            if (it != factors.end())
                ++it->second;
            else
                factors.emplace_back(m, e + 1);
            continue;
        }
        u64 d = pollard_rho(m);
        hard.push_back(d);
        hard.push_back(m / d);
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> divs{1};
    for (auto [p, e] : factorize(n)) {
        size_t count = divs.size();
        u64 pe = 1;
        for (int t = 1; t <= e; ++t) {
            pe *= p;
            for (size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

double sigma(double s, u64 k) {
    if (k == 0) throw std::invalid_argument("sigma: k must be >= 1");
    double result = 1.0;
    for (auto [p, e] : factorize(k)) {
        double ps = std::pow((double)p, s);
        double term = 1.0, power = 1.0;
        for (int t = 1; t <= e; ++t) {
            power *= ps;
            term += power;
        }
        result *= term;
    }
    return result;
}

double gronwall_bound_from_log(double s, double log_k) {
    if (!(s > 0.0 && s < 1.0))
        throw std::domain_error("gronwall_bound: s must lie in (0, 1)");
    double lk = std::max(1.0, log_k);
    double llk = clamped_log(lk);
    return std::exp((1.0 / (1.0 - s)) * std::pow(lk, 1.0 - s) / llk);
}

double gronwall_bound(double s, u64 k) {
    if (k == 0) throw std::invalid_argument("gronwall_bound: k must be >= 1");
    return gronwall_bound_from_log(s, std::log((double)k));
}

double weyl_factor_from_log(const WeylFactorParams& p, double log_k, WeylVariant variant) {
    double lk = std::max(1.0, log_k);
    double llk = clamped_log(lk);
    double denom = variant == WeylVariant::th1 ? llk : std::pow(llk, p.alpha);
    return std::exp(p.K * std::pow(lk, 1.0 - p.alpha) / denom);
}

double weyl_factor(const WeylFactorParams& p, u64 k, WeylVariant variant) {
    if (k == 0) throw std::invalid_argument("weyl_factor: k must be >= 1");
    return weyl_factor_from_log(p, std::log((double)k), variant);
}

double weyl_constant_th1(double alpha) {
    return 3.0 / (1.0 - alpha) + 4.0 / std::sqrt(2.0 * alpha - 1.0);
}

double weyl_constant_th2(double alpha) {
    return 6.0 / (1.0 - alpha) +
           7.0 * (std::sqrt(std::fabs(std::log(2.0 * alpha - 1.0))) + 1.0);
}

BewePsi::BewePsi(FourierProfile profile, int truncation)
    : profile_(std::move(profile)), truncation_(truncation) {
    if (truncation_ < 1) throw std::invalid_argument("bewe_psi: truncation must be >= 1");
    if (!(profile_.alpha > 0.5))
        throw std::domain_error("bewe_psi: coefficient decay exponent must exceed 1/2");
    g_cache_.resize(1);
    G_cache_.resize(1);
}

void BewePsi::ensure(u64 r) const {
    if (r < g_cache_.size()) return;
    size_t old = g_cache_.size();
    g_cache_.resize(r + 1);
    G_cache_.resize(r + 1);
    double a = profile_.alpha;
    double C = profile_.bound_constant;
    for (u64 m = old; m <= r; ++m) {
        double partial = 0.0;
        for (int j = 1; j <= truncation_; ++j) {
            auto [aj, bj] = profile_.coeff((u64)j * m);
            partial += aj * aj + bj * bj;
        }
        // Tail: sum_{j>T} 2 C^2 (jm)^{-2a} <= 2 C^2 m^{-2a} T^{1-2a}/(2a-1).
        double tail = 2.0 * C * C * std::pow((double)m, -2.0 * a) *
                      std::pow((double)truncation_, 1.0 - 2.0 * a) / (2.0 * a - 1.0);
        g_cache_[m] = Enclosure{partial, partial + tail};
        G_cache_[m] = (m > 1 ? G_cache_[m - 1] : Enclosure{}) + g_cache_[m];
    }
}

Enclosure BewePsi::g(u64 r) const {
    ensure(r);
    return g_cache_[r];
}

Enclosure BewePsi::G(u64 r) const {
    ensure(2 * r);
    return G_cache_[2 * r];
}

Enclosure BewePsi::psi(u64 k) const {
    Enclosure total{};
    for (u64 d : divisors(k)) total += (double)d * g(d) + G(d);
    return total;
}

Enclosure bewe_psi(const FourierProfile& profile, u64 k, int truncation) {
    return BewePsi(profile, truncation).psi(k);
}

}  // namespace gcdlab
