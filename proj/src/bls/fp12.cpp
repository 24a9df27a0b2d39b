#include "platoon/bls/fp12.hpp"

#include <stdexcept>

#include "platoon/bls/params.hpp"

namespace bls {

using util::BigUint;

namespace {

// xi = 1 + i, the sextic non-residue defining the tower.
Fp2 xi() { return Fp2::from_u64(1, 1); }

struct FrobCtx {
    // v^p = gamma_v1 * v, v^{2p} = gamma_v2 * v^2, w^p = gamma_w * w.
    Fp2 gamma_v1, gamma_v2, gamma_w;
};

const FrobCtx& frob_ctx() {
    static const FrobCtx c = [] {
        FrobCtx c;
        c.gamma_v1 = xi().pow(params().p_minus_1_div_3);
        c.gamma_v2 = c.gamma_v1.square();
        c.gamma_w = xi().pow(params().p_minus_1_div_6);
        return c;
    }();
    return c;
}

struct SqrtCtx {
    Fp2 z;  // generator of the 2-Sylow subgroup: nonresidue^Q
};

const SqrtCtx& sqrt_ctx() {
    static const SqrtCtx c = [] {
        // Find a quadratic non-residue in Fp2 by Euler's criterion.
        Fp2 nonres = Fp2::zero();
        for (uint64_t a = 1; a < 20 && nonres.is_zero(); ++a) {
            for (uint64_t b = 0; b < 20; ++b) {
                Fp2 cand = Fp2::from_u64(a, b);
                Fp2 chi = cand.pow(params().q_minus_1_div_2);
                if (chi == Fp2::one().neg()) {
                    nonres = cand;
                    break;
                }
            }
        }
        if (nonres.is_zero()) throw std::logic_error("Fp2: no small non-residue found");
        SqrtCtx c;
        c.z = nonres.pow(params().fp2_ts_q);
        return c;
    }();
    return c;
}

}  // namespace

Fp12 Fp12::frobenius() const {
    const FrobCtx& g = frob_ctx();
    auto frob6 = [&](const Fp6& a) -> Fp6 {
        return {a.c0.conj(), a.c1.conj() * g.gamma_v1, a.c2.conj() * g.gamma_v2};
    };
    Fp6 a = frob6(c0);
    Fp6 b = frob6(c1).scale(g.gamma_w);
    return {a, b};
}

util::Bytes Fp12::to_bytes() const {
    util::Bytes out;
    const Fp2* coeffs[6] = {&c0.c0, &c0.c1, &c0.c2, &c1.c0, &c1.c1, &c1.c2};
    for (const Fp2* c : coeffs) {
        util::Bytes b0 = c->c0.to_bytes_be();
        util::Bytes b1 = c->c1.to_bytes_be();
        out.insert(out.end(), b0.begin(), b0.end());
        out.insert(out.end(), b1.begin(), b1.end());
    }
    return out;
}

std::optional<Fp2> fp2_sqrt(const Fp2& a) {
    if (a.is_zero()) return Fp2::zero();
    const Params& P = params();

    Fp2 t = a.pow(P.fp2_ts_q);
    Fp2 rt = a.pow(P.fp2_ts_q_plus_1_div_2);
    Fp2 c = sqrt_ctx().z;
    uint32_t m = P.fp2_ts_s;

    while (t != Fp2::one()) {
        // Least i with t^(2^i) == 1.
        uint32_t i = 0;
        Fp2 probe = t;
        while (probe != Fp2::one()) {
            probe = probe.square();
            ++i;
            if (i == m) return std::nullopt;  // non-residue
        }
        Fp2 b = c;
        for (uint32_t j = 0; j + i + 1 < m; ++j) b = b.square();
        m = i;
        c = b.square();
        t = t * c;
        rt = rt * b;
    }
    if (rt * rt != a) return std::nullopt;
    return rt;
}

std::optional<Fp2> Fp2::sqrt() const { return fp2_sqrt(*this); }

}  // namespace bls
