#pragma once

#include <cstdint>
#include <string>

#include "platoon/util/bytes.hpp"

namespace util {

// Deterministic byte generator: SHA-256 in counter mode over a 32-byte key.
// Used wherever reproducibility under a seed is part of the contract.
class Drbg {
public:
    explicit Drbg(uint64_t seed);
    explicit Drbg(const Bytes& seed_material);

    void fill(uint8_t* out, size_t len);
    Bytes bytes(size_t len);
    uint64_t next_u64();
    // Uniform in [0, bound), bound > 0. Rejection-sampled.
    uint64_t uniform(uint64_t bound);
    // Uniform double in [lo, hi).
    double uniform_real(double lo, double hi);

    // Independent child stream; same key + label always yields the same child.
    Drbg child(const std::string& label) const;

private:
    Bytes key_;
    uint64_t counter_ = 0;
    Bytes pool_;
    size_t pool_pos_ = 0;
};

}  // namespace util
