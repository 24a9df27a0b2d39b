#pragma once

#include <stdexcept>
#include <utility>

#include "platoon/bls/fp12.hpp"
#include "platoon/bls/params.hpp"

namespace bls {

struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// Short-Weierstrass point y^2 = x^3 + b in Jacobian coordinates (a = 0).
template <typename F>
struct Point {
    F X, Y, Z;

    static Point infinity() { return {F::one(), F::one(), F::zero()}; }
    bool is_infinity() const { return Z.is_zero(); }

    static Point from_affine(const F& x, const F& y) { return {x, y, F::one()}; }

    Point neg() const { return {X, Y.neg(), Z}; }

    Point dbl() const {
        if (is_infinity()) return *this;
        F A = X.square();
        F B = Y.square();
        F C = B.square();
        F D = ((X + B).square() - A - C).dbl();
        F E = A + A + A;
        F Fv = E.square();
        F X3 = Fv - D.dbl();
        F eight_c = C.dbl().dbl().dbl();
        F Y3 = E * (D - X3) - eight_c;
        F Z3 = (Y * Z).dbl();
        return {X3, Y3, Z3};
    }

    Point add(const Point& o) const {
        if (is_infinity()) return o;
        if (o.is_infinity()) return *this;
        F Z1Z1 = Z.square();
        F Z2Z2 = o.Z.square();
        F U1 = X * Z2Z2;
        F U2 = o.X * Z1Z1;
        F S1 = Y * o.Z * Z2Z2;
        F S2 = o.Y * Z * Z1Z1;
        if (U1 == U2) {
            if (S1 == S2) return dbl();
            return infinity();
        }
        F H = U2 - U1;
        F I = H.dbl().square();
        F J = H * I;
        F r = (S2 - S1).dbl();
        F V = U1 * I;
        F X3 = r.square() - J - V.dbl();
        F Y3 = r * (V - X3) - (S1 * J).dbl();
        F Z3 = ((Z + o.Z).square() - Z1Z1 - Z2Z2) * H;
        return {X3, Y3, Z3};
    }

    Point mul(const util::BigUint& k) const {
        Point acc = infinity();
        for (size_t i = k.bit_length(); i-- > 0;) {
            acc = acc.dbl();
            if (k.bit(i)) acc = acc.add(*this);
        }
        return acc;
    }

    bool eq(const Point& o) const {
        if (is_infinity() || o.is_infinity()) return is_infinity() && o.is_infinity();
        F Z1Z1 = Z.square();
        F Z2Z2 = o.Z.square();
        if (X * Z2Z2 != o.X * Z1Z1) return false;
        return Y * o.Z * Z2Z2 == o.Y * Z * Z1Z1;
    }

    // Affine coordinates; throws on the point at infinity.
    std::pair<F, F> to_affine() const {
        if (is_infinity()) throw std::logic_error("Point: affine form of infinity");
        F zinv = Z.inv();
        F zinv2 = zinv.square();
        return {X * zinv2, Y * zinv2 * zinv};
    }
};

using G1 = Point<Fp>;
using G2 = Point<Fp2>;

Fp g1_b();   // 4
Fp2 g2_b();  // 4 * (1 + i)

bool g1_on_curve_affine(const Fp& x, const Fp& y);
bool g2_on_curve_affine(const Fp2& x, const Fp2& y);

// Fixed generators of the r-order subgroups, derived deterministically.
const G1& g1_generator();
const G2& g2_generator();

bool g1_in_subgroup(const G1& p);
bool g2_in_subgroup(const G2& p);

// Compressed encodings: 48 bytes for G1, 96 bytes for G2. Flag bits in the
// top byte: 0x80 compressed, 0x40 infinity, 0x20 lexicographically-largest y.
util::Bytes g1_to_bytes(const G1& p);
util::Bytes g2_to_bytes(const G2& p);
// Decoders run curve and subgroup checks; throw DecodeError on failure.
G1 g1_from_bytes(const util::Bytes& b);
G2 g2_from_bytes(const util::Bytes& b);

// Deterministic map from a 32-byte digest onto the r-order subgroup of G1.
// Never returns infinity.
G1 map_digest_to_g1(const util::Bytes& digest32);

}  // namespace bls
