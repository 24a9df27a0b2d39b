#pragma once

#include <optional>
#include <string>
#include <vector>

#include "platoon/bls/curve.hpp"
#include "platoon/bls/pairing.hpp"
#include "platoon/bls/scalar.hpp"
#include "platoon/util/drbg.hpp"

namespace zkp {

using util::Bytes;

// Contract violations (empty aggregation, mixed rounds, count mismatch).
// Distinct from a verification returning false.
struct SchemeError : std::runtime_error {
    explicit SchemeError(const std::string& what) : std::runtime_error(what) {}
};

struct ProverKey {
    bls::Scalar sk;
    std::string company_id;
    std::string truck_id;
};

struct VerifierKey {
    bls::G2 pk;
    std::string company_id;
    std::string truck_id;
};

struct KeyPair {
    ProverKey prover;
    VerifierKey verifier;
};

// One-time proof for a single company at a given digest round.
struct Proof {
    bls::G1 omega;
    std::string company_id;
    uint64_t round = 0;
};

struct AggregatedProof {
    bls::G1 omega;
    size_t n = 0;
    uint64_t round = 0;
};

struct AggregatedVerifierKey {
    bls::G2 pk;
    size_t n = 0;
};

// Secret identity material held by a truck. Never serialized by any
// operation in this module.
struct TruckIdentity {
    Bytes m;
    Bytes salt;
    static TruckIdentity random(util::Drbg& rng, size_t m_len = 17);
};

// Hash chain over the secret identity. Round k holds H applied k times to
// H(m || salt); advancing is the only mutation and returns a new value.
class DigestChain {
public:
    static DigestChain derive(const TruckIdentity& id);
    DigestChain advance() const;
    // Advance by several rounds.
    DigestChain advance_to(uint64_t round) const;

    const Bytes& current() const { return current_; }
    uint64_t round() const { return round_; }

private:
    Bytes current_;
    uint64_t round_ = 0;
};

// Key issuance. The secret scalar is uniform in [1, r-1]; a zero draw is
// resampled internally. Seeded issuance is deterministic.
KeyPair key_gen(std::optional<uint64_t> rng_seed, const std::string& company_id,
                const std::string& truck_id);
KeyPair key_gen(util::Drbg& rng, const std::string& company_id, const std::string& truck_id);

// Build a key pair from a known scalar (test hook; rejects zero).
KeyPair key_pair_from_scalar(const bls::Scalar& sk, const std::string& company_id,
                             const std::string& truck_id);

DigestChain derive_digest(const TruckIdentity& id);
DigestChain advance_digest(const DigestChain& chain);

// Deterministic map of a 32-byte digest onto the proof-side group.
bls::G1 hash_to_group(const Bytes& digest);

Proof proof_gen(const DigestChain& chain, const ProverKey& key);

// Group product of the constituent proofs. All inputs must share a round.
AggregatedProof proof_aggregate(const std::vector<Proof>& proofs);

AggregatedVerifierKey verifier_key_aggregate(const std::vector<VerifierKey>& keys);

// Two-pairing check e(omega, g) == e(H(digest), pk). Requires matching
// constituent counts; a mismatch is an error, not a false result.
bool verify(const AggregatedProof& agg, const Bytes& expected_digest,
            const AggregatedVerifierKey& apk);

// Non-aggregated baseline: n independent pairing checks (2n pairings),
// proofs and keys matched by company id.
bool verify_sequential(const std::vector<Proof>& proofs, const Bytes& expected_digest,
                       const std::vector<VerifierKey>& keys);

// Serialization. Group elements use the compressed point encoding; decoders
// re-run curve and subgroup checks and throw bls::DecodeError on failure.
Bytes proof_to_bytes(const Proof& p);
Proof proof_from_bytes(const Bytes& b);
Bytes aggregated_proof_to_bytes(const AggregatedProof& p);
AggregatedProof aggregated_proof_from_bytes(const Bytes& b);
Bytes verifier_key_to_bytes(const VerifierKey& k);
VerifierKey verifier_key_from_bytes(const Bytes& b);
Bytes aggregated_verifier_key_to_bytes(const AggregatedVerifierKey& k);
AggregatedVerifierKey aggregated_verifier_key_from_bytes(const Bytes& b);

}  // namespace zkp
