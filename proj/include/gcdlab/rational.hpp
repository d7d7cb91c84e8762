#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gcdlab {

using i128 = __int128_t;

// Exact rational on 128-bit integers.  Confined to the piecewise-linear
// Franel integrals, whose denominators stay far below the overflow line for
// the documented argument range (k, l <= 10^4).
struct Rational {
    i128 num = 0;
    i128 den = 1;

    Rational() = default;
    Rational(i128 n, i128 d) : num(n), den(d) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        normalize();
    }
    static Rational from_int(long long n) { return Rational{n, 1}; }

    void normalize();
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    double to_double() const { return (double)num / (double)den; }
    std::string to_string() const;  // "p/q" (or "p" when q == 1)
};

i128 gcd_i128(i128 a, i128 b);

}  // namespace gcdlab
