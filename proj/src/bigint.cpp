#include "gcdlab/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace gcdlab {

void BigUint::trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

void BigUint::mul_u64(std::uint64_t m) {
    unsigned __int128 carry = 0;
    for (auto& limb : limbs_) {
        unsigned __int128 prod = (unsigned __int128)limb * m + carry;
        limb = (std::uint64_t)prod;
        carry = prod >> 64;
    }
    if (carry) limbs_.push_back((std::uint64_t)carry);
    trim();
}

std::uint64_t BigUint::to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigUint::to_u64: value exceeds 64 bits");
    return limbs_[0];
}

double BigUint::to_double() const {
    double r = 0.0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it)
        r = r * 18446744073709551616.0 + (double)*it;
    return r;
}

int BigUint::bit_length() const {
    if (is_zero()) return 0;
    return (int)(64 * (limbs_.size() - 1)) + (64 - std::countl_zero(limbs_.back()));
}

int BigUint::ceil_log2() const {
    if (is_zero()) throw std::domain_error("BigUint::ceil_log2: value must be positive");
    // Power of two iff exactly one bit set.
    bool pow2 = std::popcount(limbs_.back()) == 1 &&
                std::all_of(limbs_.begin(), limbs_.end() - 1,
                            [](std::uint64_t l) { return l == 0; });
    return bit_length() - (pow2 ? 1 : 0);
}

std::string BigUint::to_string() const {
    std::vector<std::uint64_t> work = limbs_;
    std::string out;
    auto all_zero = [&] {
        return std::all_of(work.begin(), work.end(), [](std::uint64_t l) { return l == 0; });
    };
    if (all_zero()) return "0";
    while (!all_zero()) {
        // Divide by 10^19 (largest power of ten below 2^64), collect remainder digits.
        const std::uint64_t base = 10000000000000000000ULL;
        unsigned __int128 rem = 0;
        for (auto it = work.rbegin(); it != work.rend(); ++it) {
            unsigned __int128 cur = (rem << 64) | *it;
            *it = (std::uint64_t)(cur / base);
            rem = cur % base;
        }
        std::uint64_t r = (std::uint64_t)rem;
        for (int i = 0; i < 19; ++i) {
            out.push_back(char('0' + r % 10));
            r /= 10;
        }
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    std::reverse(out.begin(), out.end());
    return out;
}

std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() <=> b.limbs_.size();
    for (size_t i = a.limbs_.size(); i-- > 0;)
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    return std::strong_ordering::equal;
}

}  // namespace gcdlab
