#include "doctest.h"

#include "platoon/bls/pairing.hpp"
#include "platoon/util/drbg.hpp"

using bls::Fp12;
using bls::G1;
using bls::G2;
using util::BigUint;

TEST_CASE("pairing is non-degenerate") {
    Fp12 e = bls::pairing(bls::g1_generator(), bls::g2_generator());
    CHECK(!e.is_one());
    // Order divides r: e^r = 1.
    CHECK(e.pow(bls::params().r).is_one());
}

TEST_CASE("pairing is bilinear over 100 random draws") {
    util::Drbg rng(31);
    const G1& g1 = bls::g1_generator();
    const G2& g2 = bls::g2_generator();
    for (int i = 0; i < 100; ++i) {
        // Random x in G1, y in G2 and scalars a, b.
        BigUint s = BigUint::from_bytes_be(rng.bytes(16));
        BigUint t = BigUint::from_bytes_be(rng.bytes(16));
        G1 x = g1.mul(s);
        G2 y = g2.mul(t);
        BigUint a = BigUint::from_bytes_be(rng.bytes(16)) % bls::params().r;
        BigUint b = BigUint::from_bytes_be(rng.bytes(16)) % bls::params().r;
        Fp12 lhs = bls::pairing(x.mul(a), y.mul(b));
        Fp12 rhs = bls::pairing(x, y).pow(a * b);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("pairing is multiplicative in the first argument") {
    util::Drbg rng(32);
    const G1& g1 = bls::g1_generator();
    const G2& g2 = bls::g2_generator();
    G1 p = g1.mul(BigUint::from_bytes_be(rng.bytes(16)));
    G1 q = g1.mul(BigUint::from_bytes_be(rng.bytes(16)));
    CHECK(bls::pairing(p.add(q), g2) == bls::pairing(p, g2) * bls::pairing(q, g2));
}

TEST_CASE("pairing with infinity is the identity") {
    CHECK(bls::pairing(G1::infinity(), bls::g2_generator()).is_one());
    CHECK(bls::pairing(bls::g1_generator(), G2::infinity()).is_one());
}

TEST_CASE("pairing results are stable across evaluations") {
    Fp12 a = bls::pairing(bls::g1_generator(), bls::g2_generator());
    Fp12 b = bls::pairing(bls::g1_generator(), bls::g2_generator());
    CHECK(a == b);
    CHECK(a.to_bytes() == b.to_bytes());
}

TEST_CASE("pairing call counter") {
    bls::reset_pairing_call_count();
    CHECK(bls::pairing_call_count() == 0);
    bls::pairing(bls::g1_generator(), bls::g2_generator());
    bls::pairing(G1::infinity(), bls::g2_generator());
    CHECK(bls::pairing_call_count() == 2);
    bls::reset_pairing_call_count();
    CHECK(bls::pairing_call_count() == 0);
}
