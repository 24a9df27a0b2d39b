#pragma once

#include <optional>

#include "platoon/bls/fp.hpp"

namespace bls {

// Fp2 = Fp[i] / (i^2 + 1).
struct Fp2 {
    Fp c0, c1;

    static Fp2 zero() { return {Fp::zero(), Fp::zero()}; }
    static Fp2 one() { return {Fp::one(), Fp::zero()}; }
    static Fp2 from_u64(uint64_t a, uint64_t b) { return {Fp::from_u64(a), Fp::from_u64(b)}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool operator==(const Fp2& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp2& o) const { return !(*this == o); }

    Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Fp2 neg() const { return {c0.neg(), c1.neg()}; }
    Fp2 conj() const { return {c0, c1.neg()}; }

    Fp2 operator*(const Fp2& o) const {
        Fp t0 = c0 * o.c0;
        Fp t1 = c1 * o.c1;
        Fp sum = (c0 + c1) * (o.c0 + o.c1);
        return {t0 - t1, sum - t0 - t1};
    }
    Fp2 square() const {
        Fp a = (c0 + c1) * (c0 - c1);
        Fp b = (c0 * c1).dbl();
        return {a, b};
    }
    Fp2 scale(const Fp& k) const { return {c0 * k, c1 * k}; }
    Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }

    // Multiplication by the sextic non-residue xi = 1 + i.
    Fp2 mul_by_xi() const { return {c0 - c1, c0 + c1}; }

    Fp2 inv() const {
        Fp norm = c0.square() + c1.square();
        Fp ninv = norm.inv();
        return {c0 * ninv, (c1 * ninv).neg()};
    }

    Fp2 pow(const util::BigUint& e) const {
        Fp2 result = one();
        for (size_t i = e.bit_length(); i-- > 0;) {
            result = result.square();
            if (e.bit(i)) result = result * *this;
        }
        return result;
    }

    // Tonelli-Shanks square root; nullopt for non-residues.
    std::optional<Fp2> sqrt() const;

    // Lexicographic sign used by the compressed encoding: compares (c1, c0)
    // of this element against its negation.
    bool is_lex_largest() const {
        Fp2 n = neg();
        int c = c1.cmp_plain(n.c1);
        if (c != 0) return c > 0;
        return c0.cmp_plain(n.c0) > 0;
    }
};

}  // namespace bls
