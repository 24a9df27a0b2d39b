#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "platoon/util/bytes.hpp"

namespace util {

// Arbitrary-precision unsigned integer, little-endian 64-bit limbs.
// Used for curve-parameter derivation at startup and as an independent
// arithmetic route in tests. Not performance critical.
class BigUint {
public:
    BigUint() = default;
    BigUint(uint64_t v);  // NOLINT: implicit by design
    static BigUint from_hex(const std::string& hex);
    static BigUint from_bytes_be(const Bytes& b);

    bool is_zero() const { return limbs_.empty(); }
    bool is_even() const { return limbs_.empty() || (limbs_[0] & 1) == 0; }
    bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }
    size_t bit_length() const;
    bool bit(size_t i) const;
    uint64_t low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

    int cmp(const BigUint& o) const;
    bool operator==(const BigUint& o) const { return cmp(o) == 0; }
    bool operator!=(const BigUint& o) const { return cmp(o) != 0; }
    bool operator<(const BigUint& o) const { return cmp(o) < 0; }
    bool operator<=(const BigUint& o) const { return cmp(o) <= 0; }
    bool operator>(const BigUint& o) const { return cmp(o) > 0; }
    bool operator>=(const BigUint& o) const { return cmp(o) >= 0; }

    BigUint operator+(const BigUint& o) const;
    BigUint operator-(const BigUint& o) const;  // requires *this >= o
    BigUint operator*(const BigUint& o) const;
    BigUint operator<<(size_t bits) const;
    BigUint operator>>(size_t bits) const;

    // Quotient and remainder; throws on zero divisor.
    static void divmod(const BigUint& num, const BigUint& den, BigUint& q, BigUint& r);
    BigUint operator/(const BigUint& o) const;
    BigUint operator%(const BigUint& o) const;

    // Integer square root (floor).
    BigUint isqrt() const;

    std::string to_hex() const;
    Bytes to_bytes_be(size_t width = 0) const;  // width 0: minimal

    const std::vector<uint64_t>& limbs() const { return limbs_; }

private:
    void trim();
    std::vector<uint64_t> limbs_;
};

// Modular helpers for test oracles.
BigUint mod_mul(const BigUint& a, const BigUint& b, const BigUint& m);
BigUint mod_pow(const BigUint& base, const BigUint& exp, const BigUint& m);

}  // namespace util
