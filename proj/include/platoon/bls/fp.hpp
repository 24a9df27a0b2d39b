#pragma once

#include <cstdint>
#include <optional>

#include "platoon/util/biguint.hpp"
#include "platoon/util/bytes.hpp"

namespace bls {

// Base field of the pairing curve: integers mod the 381-bit prime p,
// kept in Montgomery form (R = 2^384).
struct Fp {
    uint64_t limb[6];

    static Fp zero();
    static Fp one();
    static Fp from_u64(uint64_t v);
    static Fp from_biguint(const util::BigUint& v);  // v must be < p
    // 48-byte big-endian; throws std::invalid_argument if >= p.
    static Fp from_bytes_be(const util::Bytes& b);

    bool is_zero() const;
    bool operator==(const Fp& o) const;
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp operator+(const Fp& o) const;
    Fp operator-(const Fp& o) const;
    Fp operator*(const Fp& o) const;
    Fp neg() const;
    Fp square() const { return *this * *this; }
    Fp dbl() const { return *this + *this; }
    Fp inv() const;  // throws on zero
    Fp pow(const util::BigUint& e) const;
    std::optional<Fp> sqrt() const;

    util::BigUint to_biguint() const;
    util::Bytes to_bytes_be() const;  // 48 bytes

    // Plain-integer comparison, used for canonical square-root selection
    // and the compressed-point sign convention.
    int cmp_plain(const Fp& o) const;
};

}  // namespace bls
