#include "platoon/util/biguint.hpp"

#include <algorithm>
#include <stdexcept>

namespace util {

using u128 = unsigned __int128;

BigUint::BigUint(uint64_t v) {
    if (v != 0) limbs_.push_back(v);
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::from_hex(const std::string& hex) {
    BigUint out;
    for (char c : hex) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else if (c == '_' || c == ' ') continue;
        else throw std::invalid_argument("BigUint::from_hex: bad digit");
        out = (out << 4) + BigUint(uint64_t(d));
    }
    return out;
}

BigUint BigUint::from_bytes_be(const Bytes& b) {
    BigUint out;
    for (uint8_t c : b) out = (out << 8) + BigUint(uint64_t(c));
    return out;
}

size_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    uint64_t top = limbs_.back();
    size_t bits = (limbs_.size() - 1) * 64;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

bool BigUint::bit(size_t i) const {
    size_t limb = i / 64;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 64)) & 1;
}

int BigUint::cmp(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigUint BigUint::operator+(const BigUint& o) const {
    BigUint out;
    size_t n = std::max(limbs_.size(), o.limbs_.size());
    out.limbs_.resize(n + 1, 0);
    u128 carry = 0;
    for (size_t i = 0; i < n; ++i) {
        u128 s = carry;
        if (i < limbs_.size()) s += limbs_[i];
        if (i < o.limbs_.size()) s += o.limbs_[i];
        out.limbs_[i] = static_cast<uint64_t>(s);
        carry = s >> 64;
    }
    out.limbs_[n] = static_cast<uint64_t>(carry);
    out.trim();
    return out;
}

BigUint BigUint::operator-(const BigUint& o) const {
    if (cmp(o) < 0) throw std::underflow_error("BigUint: negative result");
    BigUint out;
    out.limbs_.resize(limbs_.size(), 0);
    u128 borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        u128 d = u128(limbs_[i]) - borrow - (i < o.limbs_.size() ? o.limbs_[i] : 0);
        out.limbs_[i] = static_cast<uint64_t>(d);
        borrow = (d >> 64) ? 1 : 0;
    }
    out.trim();
    return out;
}

BigUint BigUint::operator*(const BigUint& o) const {
    if (is_zero() || o.is_zero()) return BigUint();
    BigUint out;
    out.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        u128 carry = 0;
        for (size_t j = 0; j < o.limbs_.size(); ++j) {
            u128 cur = u128(limbs_[i]) * o.limbs_[j] + out.limbs_[i + j] + carry;
            out.limbs_[i + j] = static_cast<uint64_t>(cur);
            carry = cur >> 64;
        }
        out.limbs_[i + o.limbs_.size()] += static_cast<uint64_t>(carry);
    }
    out.trim();
    return out;
}

BigUint BigUint::operator<<(size_t bits) const {
    if (is_zero()) return BigUint();
    size_t limb_shift = bits / 64, bit_shift = bits % 64;
    BigUint out;
    out.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        out.limbs_[i + limb_shift] |= limbs_[i] << bit_shift;
        if (bit_shift) out.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
    }
    out.trim();
    return out;
}

BigUint BigUint::operator>>(size_t bits) const {
    size_t limb_shift = bits / 64, bit_shift = bits % 64;
    if (limb_shift >= limbs_.size()) return BigUint();
    BigUint out;
    out.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (size_t i = 0; i < out.limbs_.size(); ++i) {
        out.limbs_[i] = limbs_[i + limb_shift] >> bit_shift;
        if (bit_shift && i + limb_shift + 1 < limbs_.size())
            out.limbs_[i] |= limbs_[i + limb_shift + 1] << (64 - bit_shift);
    }
    out.trim();
    return out;
}

void BigUint::divmod(const BigUint& num, const BigUint& den, BigUint& q, BigUint& r) {
    if (den.is_zero()) throw std::domain_error("BigUint: division by zero");
    q = BigUint();
    r = BigUint();
    if (num.cmp(den) < 0) {
        r = num;
        return;
    }
    // Bitwise long division; fine for startup-time parameter derivation.
    size_t nbits = num.bit_length();
    q.limbs_.assign((nbits + 63) / 64, 0);
    for (size_t i = nbits; i-- > 0;) {
        r = r << 1;
        if (num.bit(i)) {
            if (r.limbs_.empty()) r.limbs_.push_back(1);
            else r.limbs_[0] |= 1;
        }
        if (r.cmp(den) >= 0) {
            r = r - den;
            q.limbs_[i / 64] |= (uint64_t(1) << (i % 64));
        }
    }
    q.trim();
}

BigUint BigUint::operator/(const BigUint& o) const {
    BigUint q, r;
    divmod(*this, o, q, r);
    return q;
}

BigUint BigUint::operator%(const BigUint& o) const {
    BigUint q, r;
    divmod(*this, o, q, r);
    return r;
}

BigUint BigUint::isqrt() const {
    if (is_zero()) return BigUint();
    // Newton iteration with an over-estimate start.
    BigUint x = BigUint(1) << ((bit_length() + 1) / 2);
    for (;;) {
        BigUint y = (x + *this / x) >> 1;
        if (y.cmp(x) >= 0) break;
        x = y;
    }
    return x;
}

std::string BigUint::to_hex() const {
    if (is_zero()) return "0";
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (size_t i = limbs_.size(); i-- > 0;) {
        for (int nib = 15; nib >= 0; --nib) {
            int d = (limbs_[i] >> (nib * 4)) & 0xf;
            if (out.empty() && d == 0) continue;
            out.push_back(digits[d]);
        }
    }
    return out;
}

Bytes BigUint::to_bytes_be(size_t width) const {
    size_t min_width = (bit_length() + 7) / 8;
    if (width == 0) width = std::max<size_t>(min_width, 1);
    if (min_width > width) throw std::overflow_error("BigUint: value wider than requested");
    Bytes out(width, 0);
    for (size_t i = 0; i < width; ++i) {
        size_t byte_index = width - 1 - i;  // position from LSB
        size_t limb = i / 8;
        if (limb < limbs_.size()) out[byte_index] = static_cast<uint8_t>(limbs_[limb] >> ((i % 8) * 8));
    }
    return out;
}

BigUint mod_mul(const BigUint& a, const BigUint& b, const BigUint& m) { return (a * b) % m; }

BigUint mod_pow(const BigUint& base, const BigUint& exp, const BigUint& m) {
    BigUint result(1);
    BigUint b = base % m;
    for (size_t i = exp.bit_length(); i-- > 0;) {
        result = mod_mul(result, result, m);
        if (exp.bit(i)) result = mod_mul(result, b, m);
    }
    return result;
}

}  // namespace util
