#pragma once

#include "platoon/bls/fp2.hpp"

namespace bls {

// Fp6 = Fp2[v] / (v^3 - xi), xi = 1 + i.
struct Fp6 {
    Fp2 c0, c1, c2;

    static Fp6 zero() { return {Fp2::zero(), Fp2::zero(), Fp2::zero()}; }
    static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
    bool operator==(const Fp6& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
    bool operator!=(const Fp6& o) const { return !(*this == o); }

    Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Fp6 neg() const { return {c0.neg(), c1.neg(), c2.neg()}; }

    Fp6 operator*(const Fp6& o) const {
        Fp2 a0b0 = c0 * o.c0, a1b1 = c1 * o.c1, a2b2 = c2 * o.c2;
        Fp2 t0 = a0b0 + ((c1 * o.c2) + (c2 * o.c1)).mul_by_xi();
        Fp2 t1 = (c0 * o.c1) + (c1 * o.c0) + a2b2.mul_by_xi();
        Fp2 t2 = (c0 * o.c2) + a1b1 + (c2 * o.c0);
        return {t0, t1, t2};
    }
    Fp6 square() const { return *this * *this; }
    Fp6 scale(const Fp2& k) const { return {c0 * k, c1 * k, c2 * k}; }

    // Multiply by v (shift coefficients, reduce v^3 = xi).
    Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }

    Fp6 inv() const {
        Fp2 t0 = c0.square() - (c1 * c2).mul_by_xi();
        Fp2 t1 = c2.square().mul_by_xi() - (c0 * c1);
        Fp2 t2 = c1.square() - (c0 * c2);
        Fp2 denom = c0 * t0 + (c1 * t2).mul_by_xi() + (c2 * t1).mul_by_xi();
        Fp2 dinv = denom.inv();
        return {t0 * dinv, t1 * dinv, t2 * dinv};
    }
};

}  // namespace bls
