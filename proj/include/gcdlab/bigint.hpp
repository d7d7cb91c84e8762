#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gcdlab {

// Unsigned arbitrary-precision integer, little-endian 64-bit limbs.
// Covers what primorials and factored block elements need: products of
// machine-word factors, comparisons, bit length, decimal rendering.
class BigUint {
public:
    BigUint() : limbs_{0} {}
    explicit BigUint(std::uint64_t v) : limbs_{v} {}

    void mul_u64(std::uint64_t m);
    BigUint times(std::uint64_t m) const {
        BigUint r = *this;
        r.mul_u64(m);
        return r;
    }

    bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }
    bool fits_u64() const { return limbs_.size() == 1; }
    std::uint64_t to_u64() const;  // throws std::overflow_error if it does not fit
    double to_double() const;

    // Number of bits in the binary representation; bit_length(0) == 0.
    int bit_length() const;
    // Smallest e with value <= 2^e, i.e. ceil(log2(value)); value must be >= 1.
    int ceil_log2() const;

    std::string to_string() const;

    friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }
    friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b);

private:
    std::vector<std::uint64_t> limbs_;
    void trim();
};

}  // namespace gcdlab
