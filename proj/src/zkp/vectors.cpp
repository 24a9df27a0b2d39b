#include "platoon/zkp/vectors.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace zkp {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string join_hex(const std::vector<Bytes>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out.push_back(';');
        out += util::to_hex(items[i]);
    }
    return out;
}

std::vector<Bytes> split_hex(const std::string& s) {
    std::vector<Bytes> out;
    for (const std::string& part : split(s, ';')) out.push_back(util::from_hex(part));
    return out;
}

}  // namespace

std::string vector_to_line(const VectorRecord& rec) {
    std::ostringstream os;
    os << rec.round << ',' << join_hex(rec.sks) << ',' << join_hex(rec.pks) << ','
       << util::to_hex(rec.digest) << ',' << util::to_hex(rec.omega) << ','
       << util::to_hex(rec.apk) << ',' << (rec.expect ? "true" : "false");
    return os.str();
}

VectorRecord vector_from_line(const std::string& line) {
    auto fields = split(line, ',');
    if (fields.size() != 7) throw std::runtime_error("vector record: expected 7 fields");
    VectorRecord rec;
    rec.round = std::stoull(fields[0]);
    rec.sks = split_hex(fields[1]);
    rec.pks = split_hex(fields[2]);
    rec.digest = util::from_hex(fields[3]);
    rec.omega = util::from_hex(fields[4]);
    rec.apk = util::from_hex(fields[5]);
    if (fields[6] == "true") rec.expect = true;
    else if (fields[6] == "false") rec.expect = false;
    else throw std::runtime_error("vector record: bad expect field");
    return rec;
}

std::vector<VectorRecord> read_vectors(std::istream& in) {
    std::vector<VectorRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        out.push_back(vector_from_line(line));
    }
    return out;
}

void write_vectors(std::ostream& out, const std::vector<VectorRecord>& recs) {
    out << "# round, sk_hex[], pk_hex[], digest_hex, omega_hex, apk_hex, expect_bool\n";
    for (const auto& r : recs) out << vector_to_line(r) << '\n';
}

std::vector<VectorRecord> generate_vectors(uint64_t seed, size_t honest_rows) {
    util::Drbg rng(seed);
    std::vector<VectorRecord> out;
    for (size_t row = 0; row < honest_rows; ++row) {
        size_t n = 1 + rng.uniform(4);
        TruckIdentity id = TruckIdentity::random(rng);
        DigestChain chain = derive_digest(id).advance_to(rng.uniform(4));

        std::vector<Proof> proofs;
        std::vector<VerifierKey> keys;
        VectorRecord rec;
        for (size_t i = 0; i < n; ++i) {
            KeyPair kp = key_gen(rng, "C" + std::to_string(i + 1), "T1");
            proofs.push_back(proof_gen(chain, kp.prover));
            keys.push_back(kp.verifier);
            rec.sks.push_back(kp.prover.sk.to_bytes_be());
            rec.pks.push_back(bls::g2_to_bytes(kp.verifier.pk));
        }
        AggregatedProof agg = proof_aggregate(proofs);
        AggregatedVerifierKey apk = verifier_key_aggregate(keys);
        rec.round = chain.round();
        rec.digest = chain.current();
        rec.omega = bls::g1_to_bytes(agg.omega);
        rec.apk = bls::g2_to_bytes(apk.pk);
        rec.expect = true;
        out.push_back(rec);

        // Stale digest: same material verified against the next round.
        VectorRecord stale = rec;
        stale.digest = chain.advance().current();
        stale.round = chain.round() + 1;
        stale.expect = false;
        out.push_back(stale);

        // Wrong key set: swap in a fresh key for the last company.
        VectorRecord forged = rec;
        KeyPair rogue = key_gen(rng, "C" + std::to_string(n), "T1");
        keys.back() = rogue.verifier;
        forged.pks.back() = bls::g2_to_bytes(rogue.verifier.pk);
        forged.apk = bls::g2_to_bytes(verifier_key_aggregate(keys).pk);
        forged.expect = false;
        out.push_back(forged);
    }
    return out;
}

}  // namespace zkp
