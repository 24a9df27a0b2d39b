#include "platoon/bls/params.hpp"

#include <mutex>
#include <stdexcept>

namespace bls {

using util::BigUint;

namespace {

void check(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("bls::params: ") + what);
}

Params build() {
    Params P;
    P.x_abs = 0xd201000000010000ULL;
    BigUint X(P.x_abs);  // |x|, with x < 0

    // r = x^4 - x^2 + 1 (even powers only, so the sign drops out).
    BigUint X2 = X * X;
    BigUint X4 = X2 * X2;
    P.r = X4 - X2 + BigUint(1);

    // p = (x-1)^2 * r / 3 + x. With x = -X: (x-1)^2 = (X+1)^2, + x = - X.
    BigUint xm1_sq = (X + BigUint(1)) * (X + BigUint(1));
    BigUint num = xm1_sq * P.r;
    check((num % BigUint(3)).is_zero(), "(x-1)^2 * r not divisible by 3");
    P.p = num / BigUint(3) - X;

    // Group order on the base curve: #E(Fp) = p + 1 - t with trace t = x + 1.
    // x negative makes this p + X.
    P.n1 = P.p + X;
    check((P.n1 % P.r).is_zero(), "r does not divide #E(Fp)");
    P.h1 = P.n1 / P.r;

    // Twist order. Over Fp2 the trace is t2 = t^2 - 2p (negative here), and
    // t2^2 - 4p^2 = -3 w^2 for the CM discriminant -3. The two sextic twists
    // have orders p^2 + 1 - (t2 +- 3w)/2; exactly one is divisible by r.
    BigUint t_abs = X - BigUint(1);           // |t| = X - 1, t = 1 - X < 0
    BigUint t2_mag = P.p * BigUint(2) - t_abs * t_abs;  // |t2|, t2 < 0
    BigUint p2 = P.p * P.p;
    BigUint w2_times3 = p2 * BigUint(4) - t2_mag * t2_mag;
    check((w2_times3 % BigUint(3)).is_zero(), "4p^2 - t2^2 not divisible by 3");
    BigUint w2 = w2_times3 / BigUint(3);
    BigUint w = w2.isqrt();
    check(w * w == w2, "CM square root not exact");

    BigUint base = p2 + BigUint(1);
    // Candidates: base + (|t2| - 3w)/2 and base + (|t2| + 3w)/2.
    BigUint three_w = w * BigUint(3);
    BigUint cand_a = (t2_mag >= three_w) ? base + (t2_mag - three_w) / BigUint(2)
                                         : base - (three_w - t2_mag) / BigUint(2);
    BigUint cand_b = base + (t2_mag + three_w) / BigUint(2);
    if ((cand_a % P.r).is_zero()) {
        P.n2 = cand_a;
    } else {
        check((cand_b % P.r).is_zero(), "neither twist order divisible by r");
        P.n2 = cand_b;
    }
    P.h2 = P.n2 / P.r;

    // Field exponents.
    check(P.p.bit(0) && P.p.bit(1), "p != 3 mod 4");
    P.p_plus_1_div_4 = (P.p + BigUint(1)) >> 2;
    P.p_minus_1_div_2 = (P.p - BigUint(1)) >> 1;

    BigUint q_minus_1 = p2 - BigUint(1);
    P.q_minus_1_div_2 = q_minus_1 >> 1;
    uint32_t s = 0;
    BigUint q = q_minus_1;
    while (q.is_even()) {
        q = q >> 1;
        ++s;
    }
    P.fp2_ts_s = s;
    P.fp2_ts_q = q;
    P.fp2_ts_q_plus_1_div_2 = (q + BigUint(1)) >> 1;

    // Hard part of the final exponentiation, in base p.
    BigUint p4 = p2 * p2;
    BigUint hard = p4 - p2 + BigUint(1);
    check((hard % P.r).is_zero(), "r does not divide p^4 - p^2 + 1");
    hard = hard / P.r;
    for (int i = 0; i < 4; ++i) {
        BigUint qd, rd;
        BigUint::divmod(hard, P.p, qd, rd);
        P.hard_part_digits[i] = rd;
        hard = qd;
    }
    check(hard.is_zero(), "hard part needs more than 4 base-p digits");

    BigUint p_minus_1 = P.p - BigUint(1);
    check((p_minus_1 % BigUint(6)).is_zero(), "p != 1 mod 6");
    P.p_minus_1_div_6 = p_minus_1 / BigUint(6);
    P.p_minus_1_div_3 = p_minus_1 / BigUint(3);

    check(P.p.bit_length() == 381, "p is not 381 bits");
    check(P.r.bit_length() == 255, "r is not 255 bits");
    return P;
}

}  // namespace

const Params& params() {
    static const Params P = build();
    return P;
}

}  // namespace bls
