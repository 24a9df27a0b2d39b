#pragma once

#include <cstdint>

#include "platoon/util/biguint.hpp"

namespace bls {

// Curve-family constants, all derived at startup from the single 64-bit
// parameter of the BLS12 family (x = -0xd201000000010000, the 381-bit
// instantiation). Derivations are asserted for exactness so a bad value
// fails loudly instead of producing a subtly wrong group.
struct Params {
    // |x|; the parameter itself is negative.
    uint64_t x_abs;

    util::BigUint p;   // base field modulus, 381 bits
    util::BigUint r;   // prime order of the pairing groups, 255 bits
    util::BigUint h1;  // cofactor of the r-order subgroup on the base curve
    util::BigUint h2;  // cofactor on the sextic twist
    util::BigUint n1;  // #E(Fp)   = h1 * r
    util::BigUint n2;  // #E'(Fp2) = h2 * r

    // Exponents used by field routines.
    util::BigUint p_plus_1_div_4;    // Fp sqrt (p = 3 mod 4)
    util::BigUint p_minus_1_div_2;   // Euler criterion in Fp
    util::BigUint q_minus_1_div_2;   // Euler criterion in Fp2 (q = p^2)
    util::BigUint fp2_ts_q;          // odd part of q-1
    uint32_t fp2_ts_s;               // 2-adicity of q-1
    util::BigUint fp2_ts_q_plus_1_div_2;

    // Final exponentiation: (p^4 - p^2 + 1)/r written in base p.
    util::BigUint hard_part_digits[4];

    // Frobenius exponents (p-1)/6, (p-1)/3, (p-1)/2 as big integers.
    util::BigUint p_minus_1_div_6;
    util::BigUint p_minus_1_div_3;
};

const Params& params();

}  // namespace bls
