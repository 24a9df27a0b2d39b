#pragma once

#include "platoon/bls/fp6.hpp"

namespace bls {

// Fp12 = Fp6[w] / (w^2 - v). Target group of the pairing.
struct Fp12 {
    Fp6 c0, c1;

    static Fp12 zero() { return {Fp6::zero(), Fp6::zero()}; }
    static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

    bool is_one() const { return *this == one(); }
    bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp12& o) const { return !(*this == o); }

    Fp12 operator*(const Fp12& o) const {
        Fp6 a0b0 = c0 * o.c0;
        Fp6 a1b1 = c1 * o.c1;
        Fp6 t1 = (c0 + c1) * (o.c0 + o.c1) - a0b0 - a1b1;
        return {a0b0 + a1b1.mul_by_v(), t1};
    }
    Fp12 square() const { return *this * *this; }

    // w-conjugation; equals the p^6 Frobenius, and inversion on the
    // cyclotomic subgroup.
    Fp12 conj() const { return {c0, c1.neg()}; }

    Fp12 inv() const {
        Fp6 denom = c0.square() - c1.square().mul_by_v();
        Fp6 dinv = denom.inv();
        return {c0 * dinv, (c1 * dinv).neg()};
    }

    Fp12 pow(const util::BigUint& e) const {
        Fp12 result = one();
        for (size_t i = e.bit_length(); i-- > 0;) {
            result = result.square();
            if (e.bit(i)) result = result * *this;
        }
        return result;
    }

    // p-power Frobenius endomorphism.
    Fp12 frobenius() const;

    util::Bytes to_bytes() const;
};

// Tonelli-Shanks square root in Fp2 (implementation shared with the tower).
std::optional<Fp2> fp2_sqrt(const Fp2& a);

}  // namespace bls
