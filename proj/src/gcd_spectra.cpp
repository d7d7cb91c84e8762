#include "gcdlab/gcd_spectra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace gcdlab {

GcdMatrixSpec GcdMatrixSpec::identity(double alpha, std::size_t n) {
    GcdMatrixSpec spec;
    spec.alpha = alpha;
    spec.dilations.resize(n);
    for (std::size_t i = 0; i < n; ++i) spec.dilations[i] = i + 1;
    spec.validate();
    return spec;
}

void GcdMatrixSpec::validate() const {
    if (!(alpha > 0.5 && alpha <= 1.0))
        throw std::domain_error("GcdMatrixSpec: alpha must lie in (1/2, 1]");
    if (dilations.empty()) throw std::invalid_argument("GcdMatrixSpec: empty dilation sequence");
    for (std::size_t i = 0; i < dilations.size(); ++i) {
        if (dilations[i] < 1) throw std::invalid_argument("GcdMatrixSpec: dilations must be >= 1");
        if (i > 0 && dilations[i] <= dilations[i - 1])
            throw std::invalid_argument("GcdMatrixSpec: dilations must be strictly increasing");
    }
}

double gcd_entry(const GcdMatrixSpec& spec, std::size_t k, std::size_t l) {
    if (k >= spec.size() || l >= spec.size())
        throw std::out_of_range("gcd_entry: index out of range");
    u64 a = spec.dilations[k], b = spec.dilations[l];
    u64 g = gcd_u64(a, b);
    // Log-space keeps large dilations away from overflow in (n_k n_l)^alpha;
    // grouping the logs keeps the entry bit-symmetric in (k, l).
    return std::exp(spec.alpha * (2.0 * std::log((double)g) -
                                  (std::log((double)a) + std::log((double)b))));
}

double quadratic_form(const GcdMatrixSpec& spec, const std::vector<double>& c) {
    if (c.size() != spec.size())
        throw std::invalid_argument("quadratic_form: coefficient length mismatch");
    const std::size_t n = spec.size();
    double total = 0.0, comp = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double row = 0.0, row_comp = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            double term = c[l] * gcd_entry(spec, k, l);
            double y = term - row_comp;
            double t = row + y;
            row_comp = (t - row) - y;
            row = t;
        }
        double term = c[k] * row;
        double y = term - comp;
        double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

namespace {

// On-the-fly matvec y = G v.  Entries come from two power tables
// (g^{2a} and n^{-a}) so no transcendental calls sit in the inner loop;
// each row is summed in fixed index order with compensation, which keeps
// the result independent of how rows are split across threads.
struct MatVec {
    const std::vector<u64>& dil;
    std::vector<double> pow2a;   // index g: g^{2 alpha}, g <= max dilation? sparse: g is a gcd
    std::vector<double> powma;   // index i: dilations[i]^{-alpha}
    double alpha;

    explicit MatVec(const GcdMatrixSpec& spec) : dil(spec.dilations), alpha(spec.alpha) {
        u64 maxd = dil.back();
        if (maxd <= (1u << 22)) {
            pow2a.resize(maxd + 1);
            for (u64 g = 1; g <= maxd; ++g) pow2a[g] = std::pow((double)g, 2.0 * alpha);
        }
        powma.resize(dil.size());
        for (std::size_t i = 0; i < dil.size(); ++i)
            powma[i] = std::pow((double)dil[i], -alpha);
    }

    double entry(std::size_t k, std::size_t l) const {
        u64 g = gcd_u64(dil[k], dil[l]);
        double g2a = pow2a.empty() ? std::pow((double)g, 2.0 * alpha) : pow2a[g];
        return g2a * powma[k] * powma[l];
    }

    void row_range(const std::vector<double>& v, std::vector<double>& out, std::size_t lo,
                   std::size_t hi) const {
        const std::size_t n = dil.size();
        for (std::size_t k = lo; k < hi; ++k) {
            double sum = 0.0, comp = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                double term = entry(k, l) * v[l];
                double y = term - comp;
                double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            out[k] = sum;
        }
    }

    void apply(const std::vector<double>& v, std::vector<double>& out, int threads) const {
        const std::size_t n = dil.size();
        if (threads <= 1 || n < 64) {
            row_range(v, out, 0, n);
            return;
        }
        std::vector<std::thread> pool;
        std::size_t chunk = (n + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] { row_range(v, out, lo, hi); });
        }
        for (auto& th : pool) th.join();
    }
};

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

SpectralResult largest_eigenvalue(const GcdMatrixSpec& spec, double residual_tol,
                                  int max_iterations, int threads,
                                  const std::vector<double>* warm_start) {
    spec.validate();
    const std::size_t n = spec.size();
    if (threads <= 0) threads = (int)std::min<std::size_t>(std::thread::hardware_concurrency(), n);
    MatVec mv(spec);

    // Entries are positive, so the top eigenvector is positive and the
    // all-ones start always overlaps it.
    std::vector<double> v(n, 1.0 / std::sqrt((double)n));
    if (warm_start && warm_start->size() <= n && !warm_start->empty()) {
        std::copy(warm_start->begin(), warm_start->end(), v.begin());
        double nv = norm2(v);
        for (auto& x : v) x /= nv;
    }
    std::vector<double> av(n);

    SpectralResult res;
    for (int it = 1; it <= max_iterations; ++it) {
        mv.apply(v, av, threads);
        double rho = 0.0;
        for (std::size_t i = 0; i < n; ++i) rho += v[i] * av[i];
        double rnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = av[i] - rho * v[i];
            rnorm += r * r;
        }
        rnorm = std::sqrt(rnorm);
        res.lambda = rho;
        res.residual = rnorm;
        res.iterations = it;
        if (rnorm < residual_tol) {
            res.converged = true;
            res.eigenvector = v;
            break;
        }
        double anorm = norm2(av);
        if (anorm == 0.0) break;
        for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / anorm;
    }
    if (!res.converged) res.eigenvector = v;
    res.lower = res.lambda;
    res.upper = res.lambda + res.residual;
    return res;
}

namespace {

std::vector<std::vector<double>> dense_matrix(const GcdMatrixSpec& spec) {
    const std::size_t n = spec.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) a[k][l] = gcd_entry(spec, k, l);
    return a;
}

// Cyclic Jacobi rotations until the off-diagonal Frobenius mass is gone.
std::vector<double> jacobi_solve(std::vector<std::vector<double>> a, double* off_out) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off_out) *off_out = std::sqrt(2.0 * off);
        if (off < 1e-28 * (double)n * (double)n) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double cos = 1.0 / std::sqrt(t * t + 1.0);
                double sin = t * cos;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = cos * aip - sin * aiq;
                    a[i][q] = sin * aip + cos * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double api = a[p][i], aqi = a[q][i];
                    a[p][i] = cos * api - sin * aqi;
                    a[q][i] = sin * api + cos * aqi;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace

std::vector<double> jacobi_eigenvalues(const GcdMatrixSpec& spec, std::size_t dense_limit) {
    spec.validate();
    if (spec.size() > dense_limit)
        throw std::length_error("jacobi_eigenvalues: N exceeds the dense-path limit");
    return jacobi_solve(dense_matrix(spec), nullptr);
}

SpectralResult min_eigenvalue(const GcdMatrixSpec& spec, std::size_t dense_limit) {
    spec.validate();
    if (spec.size() > dense_limit)
        throw std::length_error("min_eigenvalue: N exceeds the dense-path limit "
                                "(only largest_eigenvalue is offered above it)");
    double off = 0.0;
    auto eig = jacobi_solve(dense_matrix(spec), &off);
    SpectralResult res;
    res.lambda = eig.front();
    res.residual = off;
    res.iterations = 1;
    res.lower = eig.front() - off;
    res.upper = eig.front() + off;
    res.converged = true;
    return res;
}

double hilberdink_majorant(const std::vector<double>& c, double alpha, u64 M) {
    const u64 n = (u64)c.size();  // c is indexed 1..N via c[d-1]
    if (n == 0) throw std::invalid_argument("hilberdink_majorant: empty coefficients");
    if (M < 1 || M > n) throw std::invalid_argument("hilberdink_majorant: need 1 <= M <= N");
    const u64 n2 = n * n;
    std::vector<double> acc(n2 + 1, 0.0);
    for (u64 d = M; d <= n; ++d) {
        double w = std::pow((double)d, alpha) * std::fabs(c[d - 1]);
        if (w == 0.0) continue;
        for (u64 k = d; k <= n2; k += d) acc[k] += w;
    }
    double total = 0.0, comp = 0.0;
    for (u64 k = 1; k <= n2; ++k) {
        if (acc[k] == 0.0) continue;
        double bk = std::pow((double)k, -alpha) * acc[k];
        double term = bk * bk;
        double y = term - comp;
        double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

void write_matrix_csv(const GcdMatrixSpec& spec, std::ostream& out) {
    spec.validate();
    const std::size_t n = spec.size();
    out << "row";
    for (std::size_t l = 0; l < n; ++l) out << ",c" << l + 1;
    out << "\n";
    char buf[40];
    for (std::size_t k = 0; k < n; ++k) {
        out << k + 1;
        for (std::size_t l = 0; l < n; ++l) {
            double v = gcd_entry(spec, k, l);
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                         std::chars_format::general, 17);
            out << ',';
            out.write(buf, p - buf);
        }
        out << "\n";
    }
}

}  // namespace gcdlab
