#include "platoon/bls/scalar.hpp"

namespace bls {

using util::BigUint;

Scalar Scalar::from_u64(uint64_t v) { return from_biguint(BigUint(v)); }

Scalar Scalar::from_biguint(BigUint v) {
    Scalar s;
    s.v_ = v % params().r;
    return s;
}

Scalar Scalar::from_bytes_be(const util::Bytes& b) {
    if (b.size() != 32) throw std::invalid_argument("Scalar: expected 32 bytes");
    BigUint v = BigUint::from_bytes_be(b);
    if (v >= params().r) throw std::invalid_argument("Scalar: value >= group order");
    Scalar s;
    s.v_ = v;
    return s;
}

Scalar Scalar::random_nonzero(util::Drbg& rng) {
    for (;;) {
        BigUint v = BigUint::from_bytes_be(rng.bytes(32));
        if (v.is_zero() || v >= params().r) continue;
        Scalar s;
        s.v_ = v;
        return s;
    }
}

Scalar Scalar::operator+(const Scalar& o) const { return from_biguint(v_ + o.v_); }

Scalar Scalar::operator*(const Scalar& o) const { return from_biguint(v_ * o.v_); }

}  // namespace bls
