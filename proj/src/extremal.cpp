#include "gcdlab/extremal.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "gcdlab/special.hpp"

namespace gcdlab {

namespace {

using ordered_json = nlohmann::ordered_json;

SmoothBlock make_block(int index, int two_exponent, const std::vector<u64>& primes) {
    SmoothBlock b;
    b.index = index;
    b.two_exponent = two_exponent;
    b.primes = primes;
    const std::size_t count = std::size_t{1} << primes.size();
    b.values.reserve(count);
    b.log_values.reserve(count);
    BigUint base{1};
    for (int t = 0; t < two_exponent; ++t) base.mul_u64(2);
    double log_base = two_exponent * std::log(2.0);
    for (std::size_t mask = 0; mask < count; ++mask) {
        BigUint v = base;
        double lv = log_base;
        for (std::size_t r = 0; r < primes.size(); ++r) {
            if (mask >> r & 1) {
                v.mul_u64(primes[r]);
                lv += std::log((double)primes[r]);
            }
        }
        b.values.push_back(std::move(v));
        b.log_values.push_back(lv);
    }
    return b;
}

// phi_r(w, w') = p_r^{2a min - a(w+w')}: 1 on the diagonal, p^-a off it.
double pair_kernel_log(const SmoothBlock& b, double alpha, std::size_t u, std::size_t v) {
    double s = 0.0;
    std::size_t diff = u ^ v;
    while (diff) {
        int r = std::countr_zero(diff);
        diff &= diff - 1;
        s -= alpha * std::log((double)b.primes[r]);
    }
    return s;
}

}  // namespace

double th2_default_delta(double alpha) { return 0.5 * (1.0 / (1.0 - alpha) - 2.0); }
double th2_default_beta(double delta) { return 0.9 * delta / (2.0 + delta); }
double th2_default_k1(double alpha, double margin) {
    return std::pow((2.0 * alpha - 1.0) / (2.0 * alpha * std::log(2.0)), 1.0 - alpha) /
               (1.0 - alpha) -
           margin;
}

Th1Construction th1_blocks(double alpha, double eps, int i_max) {
    FourierProfile::require_alpha(alpha);
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("th1_blocks: eps must be in (0,1)");
    if (i_max < 1) throw std::invalid_argument("th1_blocks: i_max must be >= 1");
    if (i_max > 20)
        throw std::length_error("th1_blocks: i_max capped at 20 (2^i elements per block)");

    Th1Construction c;
    c.alpha = alpha;
    c.eps = eps;
    c.eta = (1.0 - 2.0 * eps) / (1.0 + eps);
    c.i_max = i_max;
    auto primes = first_primes(i_max);
    double gamma = c.eta / (2.0 * (1.0 - alpha));
    for (int i = 1; i <= i_max; ++i) {
        std::vector<u64> basis(primes.begin(), primes.begin() + i);
        SmoothBlock b = make_block(i, 2 * i, basis);
        b.coeffs.resize(b.size());
        double scale = std::pow(2.0, -0.5 * i) / (double)i;
        for (std::size_t e = 0; e < b.size(); ++e) {
            double lk = std::max(1.0, b.log_values[e]);
            double llk = clamped_log(lk);
            b.coeffs[e] = scale * std::exp(-gamma * std::pow(lk, 1.0 - alpha) / llk);
        }
        // Disjointness across blocks: the 2-adic valuation is 2i or 2i+1,
        // never 2i+2, so the ranges {2i, 2i+1} are pairwise disjoint.
        c.blocks.push_back(std::move(b));
    }
    return c;
}

Th2Construction th2_construction(double alpha, double beta, double K1, int i_max,
                                 double delta) {
    FourierProfile::require_alpha(alpha);
    if (delta < 0.0) delta = th2_default_delta(alpha);
    if (!(delta > 0.0 && 2.0 + delta < 1.0 / (1.0 - alpha)))
        throw std::invalid_argument("th2_construction: need 2 + delta < 1/(1 - alpha)");
    if (!(beta > 0.0 && beta < delta / (2.0 + delta)))
        throw std::invalid_argument("th2_construction: need 0 < beta < delta/(2 + delta)");
    if (!(K1 > 0.0)) throw std::invalid_argument("th2_construction: K1 must be positive");
    if (i_max < 1 || i_max > 64)
        throw std::length_error("th2_construction: i_max must lie in [1, 64]");

    Th2Construction c;
    c.alpha = alpha;
    c.beta = beta;
    c.delta = delta;
    c.K1 = K1;
    c.eta = 12.0 / (2.0 * alpha - 1.0);
    c.i_max = i_max;
    c.A.assign(i_max + 2, 0);
    c.S.assign(i_max + 2, 0);
    c.T.assign(i_max + 2, 0);
    c.d.assign(i_max + 1, 0.0);

    c.S[1] = 2;
    for (int i = 1; i <= i_max; ++i) {
        c.A[i] = i == 1 ? 1 : (int)std::ceil(beta * std::log2((double)i));
        c.T[i] = c.S[i] + primorial(c.A[i]).ceil_log2();
        c.S[i + 1] = c.T[i] + (int)std::ceil(c.eta * clamped_log2((double)i));

        std::vector<u64> basis = first_primes(c.A[i]);
        SmoothBlock b = make_block(i, c.S[i], basis);
        double li = std::max(1.0, std::log((double)i));
        double lli = clamped_log(li);
        c.d[i] = std::pow((double)i, -0.5 * beta - 0.5) / li *
                 std::exp(-K1 * std::pow(li, 1.0 - alpha) / (2.0 * std::pow(lli, alpha)));
        b.coeffs.assign(b.size(), c.d[i]);
        c.blocks.push_back(std::move(b));
    }

    // Flatten ascending: the intervals [2^{S_i}, 2^{T_i}] are disjoint and
    // increasing, and within a block the mask values only grow with u.
    for (auto& b : c.blocks) {
        std::size_t begin = c.flattened.size();
        std::vector<std::size_t> order(b.size());
        for (std::size_t e = 0; e < b.size(); ++e) order[e] = e;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return b.values[x] < b.values[y];
        });
        for (std::size_t e : order) c.flattened.push_back(&b.values[e]);
        c.gamma.emplace_back(begin, c.flattened.size());
    }
    return c;
}

BlockGcdSums block_gcd_identity(const SmoothBlock& block, double alpha) {
    if (block.primes.size() > 13)
        throw std::length_error("block_gcd_identity: direct pair sum capped at 2^13 elements");
    const std::size_t n = block.size();
    BlockGcdSums out;
    double sum = 0.0, comp = 0.0;
    // Pairwise kernel depends only on the symmetric difference of the masks;
    // the shared power of two cancels.
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            double term = std::exp(pair_kernel_log(block, alpha, u, v));
            double y = term - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    out.direct = sum;
    out.closed = (double)n;
    for (u64 p : block.primes) out.closed *= 1.0 + std::pow((double)p, -alpha);
    return out;
}

double block_quadratic_form(const SmoothBlock& block, double alpha) {
    const std::size_t bits = block.primes.size();
    const std::size_t n = block.size();
    std::vector<double> w = block.coeffs;
    if (w.size() != n) throw std::invalid_argument("block_quadratic_form: missing coefficients");
    // Apply the rank-one-per-prime kernel as a tensor product of 2x2 blocks.
    for (std::size_t r = 0; r < bits; ++r) {
        double phi = std::pow((double)block.primes[r], -alpha);
        std::size_t step = std::size_t{1} << r;
        for (std::size_t base = 0; base < n; base += 2 * step) {
            for (std::size_t off = 0; off < step; ++off) {
                double w0 = w[base + off];
                double w1 = w[base + off + step];
                w[base + off] = w0 + phi * w1;
                w[base + off + step] = phi * w0 + w1;
            }
        }
    }
    double sum = 0.0, comp = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
        double term = block.coeffs[e] * w[e];
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double th1_block_weyl_mass(const Th1Construction& c, const SmoothBlock& block) {
    double gamma = c.eta / (1.0 - c.alpha);
    double sum = 0.0;
    for (std::size_t e = 0; e < block.size(); ++e) {
        double lk = std::max(1.0, block.log_values[e]);
        double llk = clamped_log(lk);
        double w = std::exp(gamma * std::pow(lk, 1.0 - c.alpha) / llk);
        sum += block.coeffs[e] * block.coeffs[e] * w;
    }
    return sum;
}

std::vector<double> divergence_partial_sums(const Th1Construction& c, int M) {
    if (M < 1 || M > c.i_max)
        throw std::invalid_argument("divergence_partial_sums: M must lie in [1, i_max]");
    double half_zeta = riemann_zeta(2.0 * c.alpha) / 2.0;
    std::vector<double> sums;
    double acc = 0.0;
    for (int i = 1; i <= M; ++i) {
        acc += half_zeta * block_quadratic_form(c.blocks[i - 1], c.alpha);
        sums.push_back(acc);
    }
    return sums;
}

std::vector<double> divergence_partial_sums(const Th2Construction& c, int M) {
    if (M < 1 || M > c.i_max)
        throw std::invalid_argument("divergence_partial_sums: M must lie in [1, i_max]");
    double half_zeta = riemann_zeta(2.0 * c.alpha) / 2.0;
    std::vector<double> sums;
    double acc = 0.0;
    for (int i = 1; i <= M; ++i) {
        auto id = block_gcd_identity(c.blocks[i - 1], c.alpha);
        acc += half_zeta * c.d[i] * c.d[i] * id.closed;
        sums.push_back(acc);
    }
    return sums;
}

namespace {

ordered_json block_to_json(const SmoothBlock& b) {
    ordered_json jb;
    jb["i"] = b.index;
    jb["two_exponent"] = b.two_exponent;
    jb["primes"] = b.primes;
    ordered_json elems = ordered_json::array();
    for (std::size_t e = 0; e < b.size(); ++e) {
        ordered_json je;
        je["mask"] = e;
        ordered_json expv = ordered_json::array();
        for (std::size_t r = 0; r < b.primes.size(); ++r) expv.push_back((int)(e >> r & 1));
        je["prime_exponents"] = expv;
        je["value"] = b.values[e].to_string();
        je["coeff"] = b.coeffs[e];
        elems.push_back(std::move(je));
    }
    jb["elements"] = std::move(elems);
    return jb;
}

}  // namespace

std::string to_json(const Th1Construction& c, int indent) {
    ordered_json j;
    j["variant"] = "th1";
    j["alpha"] = c.alpha;
    j["eps"] = c.eps;
    j["eta"] = c.eta;
    j["i_max"] = c.i_max;
    ordered_json blocks = ordered_json::array();
    for (const auto& b : c.blocks) blocks.push_back(block_to_json(b));
    j["blocks"] = std::move(blocks);
    return j.dump(indent);
}

std::string to_json(const Th2Construction& c, int indent) {
    ordered_json j;
    j["variant"] = "th2";
    j["alpha"] = c.alpha;
    j["beta"] = c.beta;
    j["delta"] = c.delta;
    j["k1"] = c.K1;
    j["eta"] = c.eta;
    j["i_max"] = c.i_max;
    ordered_json schedule = ordered_json::array();
    for (int i = 1; i <= c.i_max; ++i) {
        ordered_json row;
        row["i"] = i;
        row["A"] = c.A[i];
        row["S"] = c.S[i];
        row["T"] = c.T[i];
        row["S_next"] = c.S[i + 1];
        row["d"] = c.d[i];
        schedule.push_back(std::move(row));
    }
    j["schedule"] = std::move(schedule);
    ordered_json blocks = ordered_json::array();
    for (const auto& b : c.blocks) blocks.push_back(block_to_json(b));
    j["blocks"] = std::move(blocks);
    return j.dump(indent);
}

}  // namespace gcdlab
