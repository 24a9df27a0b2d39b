#include "platoon/bls/fp.hpp"

#include <cstring>
#include <stdexcept>

#include "platoon/bls/params.hpp"

namespace bls {

using util::BigUint;
using util::Bytes;
using u128 = unsigned __int128;

namespace {

struct FpCtx {
    uint64_t p[6];
    uint64_t n0inv;   // -p^{-1} mod 2^64
    Fp rr;            // R^2 mod p (Montgomery form of R)
    Fp one;           // R mod p (Montgomery form of 1)
};

void limbs_from_biguint(const BigUint& v, uint64_t out[6]) {
    const auto& l = v.limbs();
    for (int i = 0; i < 6; ++i) out[i] = i < static_cast<int>(l.size()) ? l[i] : 0;
}

BigUint biguint_from_limbs(const uint64_t in[6]) {
    BigUint v;
    for (int i = 5; i >= 0; --i) v = (v << 64) + BigUint(in[i]);
    return v;
}

const FpCtx& ctx() {
    static const FpCtx c = [] {
        FpCtx c;
        limbs_from_biguint(params().p, c.p);
        // Newton iteration for the inverse of p mod 2^64.
        uint64_t inv = 1;
        for (int i = 0; i < 6; ++i) inv *= 2 - c.p[0] * inv;
        c.n0inv = ~inv + 1;  // negate
        BigUint R = BigUint(1) << 384;
        limbs_from_biguint((R * R) % params().p, c.rr.limb);
        limbs_from_biguint(R % params().p, c.one.limb);
        return c;
    }();
    return c;
}

inline bool geq_p(const uint64_t a[6], const uint64_t p[6]) {
    for (int i = 5; i >= 0; --i) {
        if (a[i] != p[i]) return a[i] > p[i];
    }
    return true;
}

inline void sub_p(uint64_t a[6], const uint64_t p[6]) {
    u128 borrow = 0;
    for (int i = 0; i < 6; ++i) {
        u128 d = (u128)a[i] - p[i] - borrow;
        a[i] = static_cast<uint64_t>(d);
        borrow = (d >> 64) ? 1 : 0;
    }
}

// Montgomery reduction of a 12-limb value (z has 13 slots; top slot spare).
void mont_reduce(uint64_t z[13], uint64_t out[6]) {
    const FpCtx& c = ctx();
    for (int i = 0; i < 6; ++i) {
        uint64_t m = z[i] * c.n0inv;
        u128 carry = 0;
        for (int j = 0; j < 6; ++j) {
            u128 cur = (u128)m * c.p[j] + z[i + j] + carry;
            z[i + j] = static_cast<uint64_t>(cur);
            carry = cur >> 64;
        }
        int k = i + 6;
        while (carry) {
            u128 cur = (u128)z[k] + carry;
            z[k] = static_cast<uint64_t>(cur);
            carry = cur >> 64;
            ++k;
        }
    }
    for (int i = 0; i < 6; ++i) out[i] = z[i + 6];
    if (z[12] || geq_p(out, c.p)) sub_p(out, c.p);
}

void full_mul(const uint64_t a[6], const uint64_t b[6], uint64_t z[13]) {
    std::memset(z, 0, 13 * sizeof(uint64_t));
    for (int i = 0; i < 6; ++i) {
        u128 carry = 0;
        for (int j = 0; j < 6; ++j) {
            u128 cur = (u128)a[i] * b[j] + z[i + j] + carry;
            z[i + j] = static_cast<uint64_t>(cur);
            carry = cur >> 64;
        }
        z[i + 6] = static_cast<uint64_t>(carry);
    }
}

// Binary extended gcd, inputs/outputs in plain (non-Montgomery) limbs.
void plain_inv(const uint64_t x[6], uint64_t out[6]) {
    const FpCtx& c = ctx();
    auto is_zero6 = [](const uint64_t a[6]) {
        for (int i = 0; i < 6; ++i)
            if (a[i]) return false;
        return true;
    };
    auto is_one6 = [](const uint64_t a[6]) {
        if (a[0] != 1) return false;
        for (int i = 1; i < 6; ++i)
            if (a[i]) return false;
        return true;
    };
    auto cmp6 = [](const uint64_t a[6], const uint64_t b[6]) {
        for (int i = 5; i >= 0; --i) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    };
    auto sub6 = [](uint64_t a[6], const uint64_t b[6]) {
        u128 borrow = 0;
        for (int i = 0; i < 6; ++i) {
            u128 d = (u128)a[i] - b[i] - borrow;
            a[i] = static_cast<uint64_t>(d);
            borrow = (d >> 64) ? 1 : 0;
        }
    };
    auto shr1 = [](uint64_t a[6], uint64_t top_in) {
        for (int i = 0; i < 6; ++i) {
            uint64_t next = (i < 5) ? a[i + 1] : top_in;
            a[i] = (a[i] >> 1) | (next << 63);
        }
    };
    // Halve a value mod p: if odd, add p first (tracking the carry bit).
    auto half_mod = [&](uint64_t a[6]) {
        uint64_t top = 0;
        if (a[0] & 1) {
            u128 carry = 0;
            for (int i = 0; i < 6; ++i) {
                u128 s = (u128)a[i] + c.p[i] + carry;
                a[i] = static_cast<uint64_t>(s);
                carry = s >> 64;
            }
            top = static_cast<uint64_t>(carry);
        }
        shr1(a, top);
    };
    auto sub_mod = [&](uint64_t a[6], const uint64_t b[6]) {
        if (cmp6(a, b) < 0) {
            u128 carry = 0;
            for (int i = 0; i < 6; ++i) {
                u128 s = (u128)a[i] + c.p[i] + carry;
                a[i] = static_cast<uint64_t>(s);
                carry = s >> 64;
            }
            // a + p < 2^384 here is not guaranteed limb-wise, but a < b <= p
            // keeps the true value below 2p < 2^382, so the carry is zero.
            (void)carry;
        }
        sub6(a, b);
    };

    if (is_zero6(x)) throw std::domain_error("Fp: inverse of zero");

    uint64_t a[6], b[6], u[6] = {1, 0, 0, 0, 0, 0}, v[6] = {0, 0, 0, 0, 0, 0};
    std::memcpy(a, x, sizeof(a));
    std::memcpy(b, c.p, sizeof(b));

    while (!is_one6(a) && !is_one6(b)) {
        while ((a[0] & 1) == 0) {
            shr1(a, 0);
            half_mod(u);
        }
        while ((b[0] & 1) == 0) {
            shr1(b, 0);
            half_mod(v);
        }
        if (cmp6(a, b) >= 0) {
            sub6(a, b);
            sub_mod(u, v);
        } else {
            sub6(b, a);
            sub_mod(v, u);
        }
    }
    std::memcpy(out, is_one6(a) ? u : v, 6 * sizeof(uint64_t));
}

}  // namespace

Fp Fp::zero() {
    Fp f;
    std::memset(f.limb, 0, sizeof(f.limb));
    return f;
}

Fp Fp::one() { return ctx().one; }

Fp Fp::from_u64(uint64_t v) {
    Fp plain = zero();
    plain.limb[0] = v;
    uint64_t z[13];
    full_mul(plain.limb, ctx().rr.limb, z);
    Fp out;
    mont_reduce(z, out.limb);
    return out;
}

Fp Fp::from_biguint(const BigUint& v) {
    if (v >= params().p) throw std::invalid_argument("Fp: value >= modulus");
    Fp plain;
    limbs_from_biguint(v, plain.limb);
    uint64_t z[13];
    full_mul(plain.limb, ctx().rr.limb, z);
    Fp out;
    mont_reduce(z, out.limb);
    return out;
}

Fp Fp::from_bytes_be(const Bytes& b) {
    if (b.size() != 48) throw std::invalid_argument("Fp: expected 48 bytes");
    return from_biguint(BigUint::from_bytes_be(b));
}

bool Fp::is_zero() const {
    for (uint64_t l : limb)
        if (l) return false;
    return true;
}

bool Fp::operator==(const Fp& o) const { return std::memcmp(limb, o.limb, sizeof(limb)) == 0; }

Fp Fp::operator+(const Fp& o) const {
    Fp out;
    u128 carry = 0;
    for (int i = 0; i < 6; ++i) {
        u128 s = (u128)limb[i] + o.limb[i] + carry;
        out.limb[i] = static_cast<uint64_t>(s);
        carry = s >> 64;
    }
    if (geq_p(out.limb, ctx().p)) sub_p(out.limb, ctx().p);
    return out;
}

Fp Fp::operator-(const Fp& o) const {
    Fp out;
    u128 borrow = 0;
    for (int i = 0; i < 6; ++i) {
        u128 d = (u128)limb[i] - o.limb[i] - borrow;
        out.limb[i] = static_cast<uint64_t>(d);
        borrow = (d >> 64) ? 1 : 0;
    }
    if (borrow) {
        u128 carry = 0;
        for (int i = 0; i < 6; ++i) {
            u128 s = (u128)out.limb[i] + ctx().p[i] + carry;
            out.limb[i] = static_cast<uint64_t>(s);
            carry = s >> 64;
        }
    }
    return out;
}

Fp Fp::operator*(const Fp& o) const {
    uint64_t z[13];
    full_mul(limb, o.limb, z);
    Fp out;
    mont_reduce(z, out.limb);
    return out;
}

Fp Fp::neg() const {
    if (is_zero()) return *this;
    Fp out;
    u128 borrow = 0;
    for (int i = 0; i < 6; ++i) {
        u128 d = (u128)ctx().p[i] - limb[i] - borrow;
        out.limb[i] = static_cast<uint64_t>(d);
        borrow = (d >> 64) ? 1 : 0;
    }
    return out;
}

Fp Fp::inv() const {
    // Convert out of Montgomery form, invert, convert back.
    uint64_t z[13] = {0};
    std::memcpy(z, limb, 6 * sizeof(uint64_t));
    uint64_t plain[6];
    mont_reduce(z, plain);
    uint64_t inv_plain[6];
    plain_inv(plain, inv_plain);
    uint64_t z2[13];
    full_mul(inv_plain, ctx().rr.limb, z2);
    Fp out;
    mont_reduce(z2, out.limb);
    return out;
}

Fp Fp::pow(const BigUint& e) const {
    Fp result = one();
    for (size_t i = e.bit_length(); i-- > 0;) {
        result = result * result;
        if (e.bit(i)) result = result * *this;
    }
    return result;
}

std::optional<Fp> Fp::sqrt() const {
    if (is_zero()) return zero();
    Fp cand = pow(params().p_plus_1_div_4);
    if (cand * cand == *this) return cand;
    return std::nullopt;
}

BigUint Fp::to_biguint() const {
    uint64_t z[13] = {0};
    std::memcpy(z, limb, 6 * sizeof(uint64_t));
    uint64_t plain[6];
    mont_reduce(z, plain);
    return biguint_from_limbs(plain);
}

Bytes Fp::to_bytes_be() const { return to_biguint().to_bytes_be(48); }

int Fp::cmp_plain(const Fp& o) const {
    return to_biguint().cmp(o.to_biguint());
}

}  // namespace bls
