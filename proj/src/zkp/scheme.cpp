#include "platoon/zkp/scheme.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "platoon/util/sha256.hpp"

namespace zkp {

TruckIdentity TruckIdentity::random(util::Drbg& rng, size_t m_len) {
    TruckIdentity id;
    id.m = rng.bytes(m_len);
    id.salt = rng.bytes(16);
    return id;
}

DigestChain DigestChain::derive(const TruckIdentity& id) {
    DigestChain c;
    Bytes material = id.m;
    material.insert(material.end(), id.salt.begin(), id.salt.end());
    c.current_ = util::sha256(material);
    c.round_ = 0;
    return c;
}

DigestChain DigestChain::advance() const {
    DigestChain c;
    c.current_ = util::sha256(current_);
    c.round_ = round_ + 1;
    return c;
}

DigestChain DigestChain::advance_to(uint64_t round) const {
    if (round < round_) throw SchemeError("DigestChain: rounds never decrease");
    DigestChain c = *this;
    while (c.round_ < round) c = c.advance();
    return c;
}

KeyPair key_gen(std::optional<uint64_t> rng_seed, const std::string& company_id,
                const std::string& truck_id) {
    if (rng_seed) {
        util::Drbg rng = util::Drbg(*rng_seed).child("keygen|" + company_id + "|" + truck_id);
        return key_gen(rng, company_id, truck_id);
    }
    std::random_device rd;
    util::Bytes entropy;
    for (int i = 0; i < 8; ++i) util::append_u32_be(entropy, rd());
    util::Drbg rng(entropy);
    return key_gen(rng, company_id, truck_id);
}

KeyPair key_gen(util::Drbg& rng, const std::string& company_id, const std::string& truck_id) {
    bls::Scalar sk = bls::Scalar::random_nonzero(rng);
    return key_pair_from_scalar(sk, company_id, truck_id);
}

KeyPair key_pair_from_scalar(const bls::Scalar& sk, const std::string& company_id,
                             const std::string& truck_id) {
    if (sk.is_zero()) throw SchemeError("key issuance rejects the zero scalar");
    KeyPair kp;
    kp.prover = ProverKey{sk, company_id, truck_id};
    kp.verifier = VerifierKey{bls::g2_generator().mul(sk.value()), company_id, truck_id};
    return kp;
}

DigestChain derive_digest(const TruckIdentity& id) { return DigestChain::derive(id); }

DigestChain advance_digest(const DigestChain& chain) { return chain.advance(); }

bls::G1 hash_to_group(const Bytes& digest) { return bls::map_digest_to_g1(digest); }

Proof proof_gen(const DigestChain& chain, const ProverKey& key) {
    if (key.sk.is_zero()) throw SchemeError("proof_gen: zero prover key");
    bls::G1 h = hash_to_group(chain.current());
    return Proof{h.mul(key.sk.value()), key.company_id, chain.round()};
}

AggregatedProof proof_aggregate(const std::vector<Proof>& proofs) {
    if (proofs.empty()) throw SchemeError("proof_aggregate: empty input");
    uint64_t round = proofs.front().round;
    bls::G1 acc = bls::G1::infinity();
    for (const Proof& p : proofs) {
        if (p.round != round) throw SchemeError("proof_aggregate: mixed rounds");
        acc = acc.add(p.omega);
    }
    return AggregatedProof{acc, proofs.size(), round};
}

AggregatedVerifierKey verifier_key_aggregate(const std::vector<VerifierKey>& keys) {
    if (keys.empty()) throw SchemeError("verifier_key_aggregate: empty input");
    bls::G2 acc = bls::G2::infinity();
    for (const VerifierKey& k : keys) acc = acc.add(k.pk);
    return AggregatedVerifierKey{acc, keys.size()};
}

bool verify(const AggregatedProof& agg, const Bytes& expected_digest,
            const AggregatedVerifierKey& apk) {
    if (agg.n != apk.n) throw SchemeError("verify: proof/key count mismatch");
    bls::G1 h = hash_to_group(expected_digest);
    bls::Fp12 lhs = bls::pairing(agg.omega, bls::g2_generator());
    bls::Fp12 rhs = bls::pairing(h, apk.pk);
    return lhs == rhs;
}

bool verify_sequential(const std::vector<Proof>& proofs, const Bytes& expected_digest,
                       const std::vector<VerifierKey>& keys) {
    if (proofs.empty()) throw SchemeError("verify_sequential: empty input");
    if (proofs.size() != keys.size()) throw SchemeError("verify_sequential: length mismatch");
    std::map<std::string, const VerifierKey*> by_company;
    for (const VerifierKey& k : keys) by_company[k.company_id] = &k;
    if (by_company.size() != keys.size())
        throw SchemeError("verify_sequential: duplicate company key");

    bls::G1 h = hash_to_group(expected_digest);
    // All 2n pairings are evaluated regardless of early mismatches; the
    // baseline's cost model is part of its contract.
    bool ok = true;
    for (const Proof& p : proofs) {
        auto it = by_company.find(p.company_id);
        if (it == by_company.end()) throw SchemeError("verify_sequential: unmatched company");
        bls::Fp12 lhs = bls::pairing(p.omega, bls::g2_generator());
        bls::Fp12 rhs = bls::pairing(h, it->second->pk);
        ok = ok && lhs == rhs;
    }
    return ok;
}

Bytes proof_to_bytes(const Proof& p) {
    util::ByteWriter w;
    w.bytes(bls::g1_to_bytes(p.omega));
    w.str(p.company_id);
    w.u64(p.round);
    return w.take();
}

Proof proof_from_bytes(const Bytes& b) {
    util::ByteReader r(b);
    Proof p;
    p.omega = bls::g1_from_bytes(r.bytes());
    p.company_id = r.str();
    p.round = r.u64();
    return p;
}

Bytes aggregated_proof_to_bytes(const AggregatedProof& p) {
    util::ByteWriter w;
    w.bytes(bls::g1_to_bytes(p.omega));
    w.u32(static_cast<uint32_t>(p.n));
    w.u64(p.round);
    return w.take();
}

AggregatedProof aggregated_proof_from_bytes(const Bytes& b) {
    util::ByteReader r(b);
    AggregatedProof p;
    p.omega = bls::g1_from_bytes(r.bytes());
    p.n = r.u32();
    p.round = r.u64();
    if (p.n == 0) throw bls::DecodeError("aggregated proof with zero count");
    return p;
}

Bytes verifier_key_to_bytes(const VerifierKey& k) {
    util::ByteWriter w;
    w.bytes(bls::g2_to_bytes(k.pk));
    w.str(k.company_id);
    w.str(k.truck_id);
    return w.take();
}

VerifierKey verifier_key_from_bytes(const Bytes& b) {
    util::ByteReader r(b);
    VerifierKey k;
    k.pk = bls::g2_from_bytes(r.bytes());
    if (k.pk.is_infinity()) throw bls::DecodeError("verifier key is the identity element");
    k.company_id = r.str();
    k.truck_id = r.str();
    return k;
}

Bytes aggregated_verifier_key_to_bytes(const AggregatedVerifierKey& k) {
    util::ByteWriter w;
    w.bytes(bls::g2_to_bytes(k.pk));
    w.u32(static_cast<uint32_t>(k.n));
    return w.take();
}

AggregatedVerifierKey aggregated_verifier_key_from_bytes(const Bytes& b) {
    util::ByteReader r(b);
    AggregatedVerifierKey k;
    k.pk = bls::g2_from_bytes(r.bytes());
    k.n = r.u32();
    if (k.n == 0) throw bls::DecodeError("aggregated key with zero count");
    return k;
}

}  // namespace zkp
