#pragma once

#include "platoon/bls/params.hpp"
#include "platoon/util/bytes.hpp"
#include "platoon/util/drbg.hpp"

namespace bls {

// Element of Z_r, the scalar field of the pairing groups.
class Scalar {
public:
    Scalar() = default;
    static Scalar zero() { return Scalar(); }
    static Scalar one() { return from_u64(1); }
    static Scalar from_u64(uint64_t v);
    static Scalar from_biguint(util::BigUint v);  // reduced mod r
    // 32-byte big-endian; throws std::invalid_argument if >= r.
    static Scalar from_bytes_be(const util::Bytes& b);
    // Uniform in [1, r-1].
    static Scalar random_nonzero(util::Drbg& rng);

    bool is_zero() const { return v_.is_zero(); }
    bool operator==(const Scalar& o) const { return v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return v_ != o.v_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;

    const util::BigUint& value() const { return v_; }
    util::Bytes to_bytes_be() const { return v_.to_bytes_be(32); }

private:
    util::BigUint v_;
};

}  // namespace bls
