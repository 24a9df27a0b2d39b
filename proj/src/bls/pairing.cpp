#include "platoon/bls/pairing.hpp"

namespace bls {

using util::BigUint;

namespace {

thread_local uint64_t g_pairing_calls = 0;

struct AffineG2 {
    Fp2 x, y;
};

// Line through the (untwisted) image of T with slope lambda, evaluated at
// the G1 point (xp, yp). The result is sparse in the w-basis; the whole
// line has been scaled by xi, which the final exponentiation cancels.
Fp12 line_eval(const Fp2& lambda, const AffineG2& t, const Fp& xp, const Fp& yp) {
    Fp2 c00 = Fp2{yp, yp};  // xi * yp with xi = 1 + i
    Fp2 c11 = lambda * t.x - t.y;
    Fp2 c12 = lambda.scale(xp).neg();
    return Fp12{Fp6{c00, Fp2::zero(), Fp2::zero()}, Fp6{Fp2::zero(), c11, c12}};
}

Fp12 miller_loop(const Fp& xp, const Fp& yp, const AffineG2& q) {
    const uint64_t loop = params().x_abs;
    int top = 63;
    while (!((loop >> top) & 1)) --top;

    Fp12 f = Fp12::one();
    AffineG2 t = q;
    for (int i = top - 1; i >= 0; --i) {
        Fp2 lambda = (t.x.square().scale(Fp::from_u64(3))) * t.y.dbl().inv();
        f = f.square() * line_eval(lambda, t, xp, yp);
        Fp2 x3 = lambda.square() - t.x.dbl();
        Fp2 y3 = lambda * (t.x - x3) - t.y;
        t = {x3, y3};

        if ((loop >> i) & 1) {
            Fp2 lambda2 = (t.y - q.y) * (t.x - q.x).inv();
            f = f * line_eval(lambda2, t, xp, yp);
            Fp2 x3a = lambda2.square() - t.x - q.x;
            Fp2 y3a = lambda2 * (t.x - x3a) - t.y;
            t = {x3a, y3a};
        }
    }
    // The curve parameter is negative; conjugation inverts up to final exp.
    return f.conj();
}

Fp12 final_exponentiation(const Fp12& f) {
    // Easy part: f^((p^6 - 1)(p^2 + 1)).
    Fp12 f1 = f.conj() * f.inv();
    Fp12 m = f1.frobenius().frobenius() * f1;

    // Hard part: exponent (p^4 - p^2 + 1)/r in base p, evaluated as a
    // 4-way interleaved multi-exponentiation over Frobenius images.
    const Params& P = params();
    Fp12 bases[4];
    bases[0] = m;
    for (int k = 1; k < 4; ++k) bases[k] = bases[k - 1].frobenius();

    Fp12 table[16];
    table[0] = Fp12::one();
    for (int mask = 1; mask < 16; ++mask) {
        int low = mask & -mask;
        int idx = low == 1 ? 0 : low == 2 ? 1 : low == 4 ? 2 : 3;
        table[mask] = table[mask ^ low] * bases[idx];
    }

    size_t max_bits = 0;
    for (const auto& d : P.hard_part_digits) max_bits = std::max(max_bits, d.bit_length());

    Fp12 acc = Fp12::one();
    for (size_t i = max_bits; i-- > 0;) {
        acc = acc.square();
        int mask = 0;
        for (int k = 0; k < 4; ++k)
            if (P.hard_part_digits[k].bit(i)) mask |= 1 << k;
        if (mask) acc = acc * table[mask];
    }
    return acc;
}

}  // namespace

Fp12 pairing(const G1& p, const G2& q) {
    ++g_pairing_calls;
    if (p.is_infinity() || q.is_infinity()) return Fp12::one();
    auto [xp, yp] = p.to_affine();
    auto [xq, yq] = q.to_affine();
    Fp12 f = miller_loop(xp, yp, AffineG2{xq, yq});
    return final_exponentiation(f);
}

uint64_t pairing_call_count() { return g_pairing_calls; }
void reset_pairing_call_count() { g_pairing_calls = 0; }

}  // namespace bls
