#pragma once

#include <iosfwd>

#include "platoon/zkp/scheme.hpp"

namespace zkp {

// Golden-vector record. Line format, comma separated with ';' inside list
// fields: round, sk_hex[], pk_hex[], digest_hex, omega_hex, apk_hex, expect.
struct VectorRecord {
    uint64_t round = 0;
    std::vector<Bytes> sks;
    std::vector<Bytes> pks;
    Bytes digest;
    Bytes omega;
    Bytes apk;
    bool expect = false;
};

std::string vector_to_line(const VectorRecord& rec);
VectorRecord vector_from_line(const std::string& line);

std::vector<VectorRecord> read_vectors(std::istream& in);
void write_vectors(std::ostream& out, const std::vector<VectorRecord>& recs);

// Deterministic generation used to pin the golden file: honest rows plus
// stale-digest and wrong-key rows that must fail verification.
std::vector<VectorRecord> generate_vectors(uint64_t seed, size_t honest_rows);

}  // namespace zkp
