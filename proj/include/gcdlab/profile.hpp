#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace gcdlab {

// Closed interval [lo, hi] certifying a truncated or approximated quantity.
struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }

    Enclosure& operator+=(const Enclosure& o) {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }
    friend Enclosure operator+(Enclosure a, const Enclosure& b) { return a += b; }
    friend Enclosure operator*(double s, const Enclosure& e) {
        return s >= 0 ? Enclosure{s * e.lo, s * e.hi} : Enclosure{s * e.hi, s * e.lo};
    }
};

enum class ProfileKind { sine_extremal, cosine_extremal, bernoulli, custom };

// A mean-zero 1-periodic function given by its Fourier coefficients
// (a_j, b_j) with |a_j|, |b_j| <= C j^{-alpha}.  The three named profiles
// fix the coefficient rule; custom supplies an arbitrary rule plus its
// bound constant.
struct FourierProfile {
    double alpha = 0.75;
    ProfileKind kind = ProfileKind::sine_extremal;
    double bound_constant = 1.0;
    std::function<std::pair<double, double>(std::uint64_t)> coeff_rule;  // custom only

    std::pair<double, double> coeff(std::uint64_t j) const {
        switch (kind) {
            case ProfileKind::sine_extremal:
                return {std::pow((double)j, -alpha), 0.0};
            case ProfileKind::cosine_extremal:
                return {0.0, std::pow((double)j, -alpha)};
            case ProfileKind::bernoulli:
                return {1.0 / (double)j, 0.0};
            case ProfileKind::custom:
                return coeff_rule(j);
        }
        return {0.0, 0.0};
    }

    static FourierProfile sine(double alpha) {
        require_alpha(alpha);
        return {alpha, ProfileKind::sine_extremal, 1.0, {}};
    }
    static FourierProfile cosine(double alpha) {
        require_alpha(alpha);
        return {alpha, ProfileKind::cosine_extremal, 1.0, {}};
    }
    static FourierProfile bernoulli_profile() {
        return {1.0, ProfileKind::bernoulli, 1.0, {}};
    }
    static FourierProfile custom(double alpha, double bound_constant,
                                 std::function<std::pair<double, double>(std::uint64_t)> rule) {
        require_alpha(alpha);
        return {alpha, ProfileKind::custom, bound_constant, std::move(rule)};
    }

    static void require_alpha(double alpha) {
        if (!(alpha > 0.5 && alpha < 1.0))
            throw std::domain_error("alpha must lie in (1/2, 1)");
    }
};

}  // namespace gcdlab
