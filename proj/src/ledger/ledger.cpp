#include "platoon/ledger/ledger.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>

#include "platoon/util/sha256.hpp"

namespace ledger {

const char* kPipelineParticipant = "verifier-pipeline";

const char* kDefaultPolicyText = R"POLICY(# Default ledger access policy.

rule PipelineCanWritePlatoonRecord {
  description: "The verification pipeline appends platoon records after a successful authentication."
  participant(p): "verifier-pipeline"
  operation: WRITE
  resource(r): "Platoon_Record"
  condition: "true"
  action: ALLOW
}

rule CompanyCanReadPlatoonRecord {
  description: "A company reads the platoon records of its own trucks."
  participant(p): "*"
  operation: READ
  resource(r): "Platoon_Record"
  condition: "r.owner == p.id"
  action: ALLOW
}

rule PipelineCanReadVerifierKey {
  description: "Stored verifier keys are readable by the verification pipeline only."
  participant(p): "verifier-pipeline"
  operation: READ
  resource(r): "Verifier_Key"
  condition: "true"
  action: ALLOW
}
)POLICY";

std::vector<acl::AccessControlRule> default_rules() { return acl::parse_rules(kDefaultPolicyText); }

Bytes Transaction::compute_id(TxKind kind, const Bytes& payload, const std::string& submitter,
                              uint64_t timestamp_ms) {
    util::ByteWriter w;
    w.u8(static_cast<uint8_t>(kind));
    w.bytes(payload);
    w.str(submitter);
    w.u64(timestamp_ms);
    return util::sha256(w.data());
}

Bytes Block::compute_hash(uint64_t height, const Bytes& prev_hash,
                          const std::vector<Transaction>& txs) {
    util::ByteWriter w;
    w.u64(height);
    w.bytes(prev_hash);
    for (const auto& tx : txs) w.bytes(tx.tx_id);
    return util::sha256(w.data());
}

void PlatoonRecord::validate() const {
    if (truck_id.empty() || owner.empty() || platoon_id.empty())
        throw LedgerError("platoon record: missing identifiers");
    if (left_at_ms && *left_at_ms < joined_at_ms)
        throw LedgerError("platoon record: joined_at after left_at");
}

namespace {

Bytes encode_register(const std::string& truck, const std::string& owner, const Bytes& digest) {
    util::ByteWriter w;
    w.str(truck);
    w.str(owner);
    w.bytes(digest);
    return w.take();
}

Bytes encode_keys(const std::string& truck, const std::vector<zkp::VerifierKey>& keys) {
    util::ByteWriter w;
    w.str(truck);
    w.u32(static_cast<uint32_t>(keys.size()));
    for (const auto& k : keys) w.bytes(zkp::verifier_key_to_bytes(k));
    return w.take();
}

Bytes encode_auth(const std::string& truck, bool verified, uint64_t round, double modeled_ms) {
    util::ByteWriter w;
    w.str(truck);
    w.u8(verified ? 1 : 0);
    w.u64(round);
    w.f64(modeled_ms);
    return w.take();
}

Bytes encode_record(const PlatoonRecord& r) {
    util::ByteWriter w;
    w.str(r.truck_id);
    w.str(r.owner);
    w.str(r.platoon_id);
    w.u64(r.joined_at_ms);
    w.u8(r.left_at_ms ? 1 : 0);
    w.u64(r.left_at_ms.value_or(0));
    w.str(r.route_segment);
    w.u32(static_cast<uint32_t>(r.position_trace.size()));
    for (const auto& [t, pos] : r.position_trace) {
        w.u64(t);
        w.f64(pos);
    }
    return w.take();
}

PlatoonRecord decode_record(const Bytes& payload) {
    util::ByteReader r(payload);
    PlatoonRecord rec;
    rec.truck_id = r.str();
    rec.owner = r.str();
    rec.platoon_id = r.str();
    rec.joined_at_ms = r.u64();
    bool has_left = r.u8() != 0;
    uint64_t left = r.u64();
    if (has_left) rec.left_at_ms = left;
    rec.route_segment = r.str();
    uint32_t n = r.u32();
    for (uint32_t i = 0; i < n; ++i) {
        uint64_t t = r.u64();
        double pos = r.f64();
        rec.position_trace.push_back({t, pos});
    }
    return rec;
}

Bytes encode_access(const std::string& participant, const std::string& resource,
                    acl::Operation op, acl::Action decision) {
    util::ByteWriter w;
    w.str(participant);
    w.str(resource);
    w.u8(op == acl::Operation::Read ? 0 : 1);
    w.u8(decision == acl::Action::Allow ? 1 : 0);
    return w.take();
}

}  // namespace

Ledger::Ledger(std::vector<std::string> companies, EndorsementPolicy policy,
               std::vector<acl::AccessControlRule> rules, uint64_t seed)
    : companies_(std::move(companies)),
      policy_(std::move(policy)),
      rules_(std::move(rules)),
      rng_(util::Drbg(seed).child("ledger")) {
    policy_.validate();
    if (companies_.empty()) throw LedgerError("ledger: no companies registered");
    Block genesis;
    genesis.height = 0;
    genesis.prev_hash = Bytes(32, 0);
    genesis.block_hash = Block::compute_hash(0, genesis.prev_hash, {});
    chain_.push_back(std::move(genesis));
}

Ledger::Ledger(const Ledger& o)
    : companies_(o.companies_), policy_(o.policy_), rules_(o.rules_), rng_(o.rng_) {
    std::shared_lock lock(o.mu_);
    rng_ = o.rng_;
    clock_ms_ = o.clock_ms_;
    chain_ = o.chain_;
    trucks_ = o.trucks_;
    records_ = o.records_;
}

TxReceipt Ledger::commit_locked(TxKind kind, Bytes payload, const std::string& submitter,
                                std::vector<std::string> endorsements) {
    clock_ms_ += 1;
    Transaction tx;
    tx.kind = kind;
    tx.payload = std::move(payload);
    tx.submitter = submitter;
    tx.timestamp_ms = clock_ms_;
    tx.endorsements = std::move(endorsements);
    if (tx.endorsements.empty()) {
        // Non-auth commits still satisfy the active policy with the k
        // nominally fastest endorsers.
        endorsement_latency_ms(policy_, rng_, &tx.endorsements);
    }
    tx.tx_id = Transaction::compute_id(tx.kind, tx.payload, tx.submitter, tx.timestamp_ms);

    Block b;
    b.height = chain_.size();
    b.prev_hash = chain_.back().block_hash;
    b.txs.push_back(std::move(tx));
    b.block_hash = Block::compute_hash(b.height, b.prev_hash, b.txs);
    chain_.push_back(std::move(b));
    return TxReceipt{chain_.back().txs.front().tx_id, chain_.back().height};
}

void Ledger::log_access_locked(const std::string& participant, const std::string& resource,
                               acl::Operation op, acl::Action decision) {
    commit_locked(TxKind::RetrievalEvent, encode_access(participant, resource, op, decision),
                  participant, {});
}

acl::Decision Ledger::check_access(const std::string& participant, acl::Operation op,
                                   const std::string& resource_id,
                                   const std::map<std::string, std::string>& resource_attrs) const {
    acl::AccessRequest req;
    req.participant_id = participant;
    req.operation = op;
    req.resource_id = resource_id;
    req.resource_attributes = resource_attrs;
    return acl::evaluate(rules_, req);
}

TxReceipt Ledger::register_truck(const std::string& company_id, const Bytes& digest_round0,
                                 const std::vector<zkp::VerifierKey>& keys) {
    std::unique_lock lock(mu_);
    if (std::find(companies_.begin(), companies_.end(), company_id) == companies_.end())
        throw LedgerError("register_truck: unknown company '" + company_id + "'");
    if (digest_round0.size() != 32) throw LedgerError("register_truck: digest must be 32 bytes");
    if (keys.size() != companies_.size())
        throw LedgerError("register_truck: need one verifier key per company (" +
                          std::to_string(companies_.size()) + ")");
    const std::string& truck = keys.front().truck_id;
    if (trucks_.count(truck)) throw LedgerError("register_truck: truck already registered");

    std::vector<std::string> covered;
    for (const auto& k : keys) {
        if (k.truck_id != truck) throw LedgerError("register_truck: keys for multiple trucks");
        if (k.pk.is_infinity()) throw LedgerError("register_truck: identity verifier key");
        covered.push_back(k.company_id);
    }
    std::sort(covered.begin(), covered.end());
    std::vector<std::string> expected = companies_;
    std::sort(expected.begin(), expected.end());
    if (covered != expected)
        throw LedgerError("register_truck: keys must cover every company exactly once");

    TxReceipt receipt =
        commit_locked(TxKind::RegisterTruck, encode_register(truck, company_id, digest_round0),
                      company_id, {});
    commit_locked(TxKind::StoreVerifierKeys, encode_keys(truck, keys), company_id, {});

    TruckEntry entry;
    entry.owner = company_id;
    entry.digest = digest_round0;
    entry.round = 0;
    entry.keys = keys;
    trucks_[truck] = std::move(entry);
    return receipt;
}

AuthOutcome Ledger::submit_auth(const zkp::AggregatedProof& agg, const std::string& truck_id) {
    std::unique_lock lock(mu_);
    auto it = trucks_.find(truck_id);
    if (it == trucks_.end()) throw LedgerError("submit_auth: unknown truck '" + truck_id + "'");
    TruckEntry& entry = it->second;
    if (agg.n != entry.keys.size())
        throw LedgerError("submit_auth: aggregate covers " + std::to_string(agg.n) +
                          " proofs, expected " + std::to_string(entry.keys.size()));

    // The pipeline reads the stored verifier keys under the ACL.
    acl::Decision key_access =
        check_access(kPipelineParticipant, acl::Operation::Read, "Verifier_Key",
                     {{"truck", truck_id}, {"owner", entry.owner}});
    log_access_locked(kPipelineParticipant, "Verifier_Key/" + truck_id, acl::Operation::Read,
                      key_access.action);
    if (key_access.action != acl::Action::Allow)
        throw LedgerError("submit_auth: pipeline denied access to verifier keys");

    std::vector<std::string> endorsers;
    double endorsement_ms = endorsement_latency_ms(policy_, rng_, &endorsers);

    AuthOutcome out;
    out.endorsement_ms = endorsement_ms;
    out.round = entry.round;
    if (agg.round != entry.round) {
        out.verified = false;
        out.reason = "stale round";
    } else {
        auto t0 = std::chrono::steady_clock::now();
        zkp::AggregatedVerifierKey apk = zkp::verifier_key_aggregate(entry.keys);
        out.verified = zkp::verify(agg, entry.digest, apk);
        auto t1 = std::chrono::steady_clock::now();
        out.verify_wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        out.reason = out.verified ? "ok" : "invalid proof";
    }
    out.latency_ms = endorsement_ms + out.verify_wall_ms;

    clock_ms_ += static_cast<uint64_t>(endorsement_ms);
    commit_locked(TxKind::AuthResult,
                  encode_auth(truck_id, out.verified, entry.round, endorsement_ms), truck_id,
                  std::move(endorsers));

    if (out.verified) {
        // Atomic with the commit: the accepted digest is consumed.
        entry.digest = util::sha256(entry.digest);
        entry.round += 1;
    }
    return out;
}

TxReceipt Ledger::store_platoon_record(const PlatoonRecord& rec, const std::string& submitter) {
    std::unique_lock lock(mu_);
    rec.validate();
    if (std::find(companies_.begin(), companies_.end(), rec.owner) == companies_.end())
        throw LedgerError("store_platoon_record: owner is not a registered company");

    acl::Decision d = check_access(submitter, acl::Operation::Write, "Platoon_Record",
                                   {{"owner", rec.owner}, {"truck", rec.truck_id}});
    if (d.action != acl::Action::Allow) {
        log_access_locked(submitter, "Platoon_Record/" + rec.truck_id, acl::Operation::Write,
                          acl::Action::Deny);
        throw LedgerError("store_platoon_record: access denied for '" + submitter + "'");
    }
    TxReceipt receipt =
        commit_locked(TxKind::PlatoonRecord, encode_record(rec), submitter, {});
    records_.push_back(rec);
    return receipt;
}

std::vector<PlatoonRecord> Ledger::retrieve_records(const RecordQuery& q,
                                                    const std::string& requester) {
    std::unique_lock lock(mu_);
    std::vector<const PlatoonRecord*> candidates;
    for (const auto& r : records_) {
        bool match = false;
        switch (q.by) {
            case RecordQuery::By::Owner: match = r.owner == q.value; break;
            case RecordQuery::By::Truck: match = r.truck_id == q.value; break;
            case RecordQuery::By::Platoon: match = r.platoon_id == q.value; break;
        }
        if (match) candidates.push_back(&r);
    }

    std::vector<PlatoonRecord> allowed;
    for (const PlatoonRecord* r : candidates) {
        acl::Decision d = check_access(requester, acl::Operation::Read, "Platoon_Record",
                                       {{"owner", r->owner}, {"truck", r->truck_id}});
        if (d.action == acl::Action::Allow) allowed.push_back(*r);
    }

    // One log entry per retrieval attempt. An attempt that matched records
    // but yielded none is a denial; an empty match set is not.
    acl::Action decision = (!candidates.empty() && allowed.empty()) ? acl::Action::Deny
                                                                    : acl::Action::Allow;
    std::string scope = q.by == RecordQuery::By::Owner ? "owner"
                        : q.by == RecordQuery::By::Truck ? "truck"
                                                         : "platoon";
    log_access_locked(requester, "Platoon_Record/" + scope + ":" + q.value, acl::Operation::Read,
                      decision);
    return allowed;
}

bool Ledger::verify_chain() const {
    std::shared_lock lock(mu_);
    return verify_chain_locked();
}

bool Ledger::verify_chain_locked() const {
    Bytes expect_prev(32, 0);
    for (size_t h = 0; h < chain_.size(); ++h) {
        const Block& b = chain_[h];
        if (b.height != h) return false;
        if (b.prev_hash != expect_prev) return false;
        for (const auto& tx : b.txs) {
            if (Transaction::compute_id(tx.kind, tx.payload, tx.submitter, tx.timestamp_ms) !=
                tx.tx_id)
                return false;
        }
        if (Block::compute_hash(b.height, b.prev_hash, b.txs) != b.block_hash) return false;
        expect_prev = b.block_hash;
    }
    return true;
}

uint64_t Ledger::height() const {
    std::shared_lock lock(mu_);
    return chain_.back().height;
}

uint64_t Ledger::now_ms() const {
    std::shared_lock lock(mu_);
    return clock_ms_;
}

size_t Ledger::truck_count() const {
    std::shared_lock lock(mu_);
    return trucks_.size();
}

bool Ledger::truck_registered(const std::string& truck_id) const {
    std::shared_lock lock(mu_);
    return trucks_.count(truck_id) > 0;
}

std::string Ledger::truck_owner(const std::string& truck_id) const {
    std::shared_lock lock(mu_);
    auto it = trucks_.find(truck_id);
    if (it == trucks_.end()) throw LedgerError("unknown truck '" + truck_id + "'");
    return it->second.owner;
}

uint64_t Ledger::stored_round(const std::string& truck_id) const {
    std::shared_lock lock(mu_);
    auto it = trucks_.find(truck_id);
    if (it == trucks_.end()) throw LedgerError("unknown truck '" + truck_id + "'");
    return it->second.round;
}

std::vector<AccessLogEntry> Ledger::access_log() const {
    std::shared_lock lock(mu_);
    std::vector<AccessLogEntry> out;
    for (const auto& b : chain_) {
        for (const auto& tx : b.txs) {
            if (tx.kind != TxKind::RetrievalEvent) continue;
            util::ByteReader r(tx.payload);
            AccessLogEntry e;
            e.participant_id = r.str();
            e.resource_id = r.str();
            e.operation = r.u8() == 0 ? acl::Operation::Read : acl::Operation::Write;
            e.decision = r.u8() ? acl::Action::Allow : acl::Action::Deny;
            e.timestamp_ms = tx.timestamp_ms;
            out.push_back(std::move(e));
        }
    }
    return out;
}

std::vector<Block> Ledger::blocks_snapshot() const {
    std::shared_lock lock(mu_);
    return chain_;
}

void Ledger::save(const std::string& path) const {
    std::shared_lock lock(mu_);
    util::ByteWriter w;
    for (const auto& b : chain_) {
        util::ByteWriter bw;
        bw.u64(b.height);
        bw.bytes(b.prev_hash);
        bw.u32(static_cast<uint32_t>(b.txs.size()));
        for (const auto& tx : b.txs) {
            bw.u8(static_cast<uint8_t>(tx.kind));
            bw.bytes(tx.payload);
            bw.str(tx.submitter);
            bw.u64(tx.timestamp_ms);
            bw.u32(static_cast<uint32_t>(tx.endorsements.size()));
            for (const auto& e : tx.endorsements) bw.str(e);
            bw.bytes(tx.tx_id);
        }
        bw.bytes(b.block_hash);
        w.bytes(bw.data());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.good()) throw LedgerError("save: cannot open '" + path + "'");
    out.write("PLGR1", 5);
    const Bytes& body = w.data();
    out.write(reinterpret_cast<const char*>(body.data()), body.size());
    if (!out.good()) throw LedgerError("save: write failed");
}

void Ledger::replay(const std::vector<Block>& chain) {
    chain_ = chain;
    trucks_.clear();
    records_.clear();
    if (!verify_chain_locked()) throw LedgerError("load: chain validation failed");
    uint64_t max_ts = 0;
    for (const auto& b : chain_) {
        for (const auto& tx : b.txs) {
            max_ts = std::max(max_ts, tx.timestamp_ms);
            switch (tx.kind) {
                case TxKind::RegisterTruck: {
                    util::ByteReader r(tx.payload);
                    std::string truck = r.str();
                    TruckEntry e;
                    e.owner = r.str();
                    e.digest = r.bytes();
                    e.round = 0;
                    trucks_[truck] = std::move(e);
                    break;
                }
                case TxKind::StoreVerifierKeys: {
                    util::ByteReader r(tx.payload);
                    std::string truck = r.str();
                    uint32_t n = r.u32();
                    auto it = trucks_.find(truck);
                    if (it == trucks_.end()) throw LedgerError("load: keys for unknown truck");
                    for (uint32_t i = 0; i < n; ++i)
                        it->second.keys.push_back(zkp::verifier_key_from_bytes(r.bytes()));
                    break;
                }
                case TxKind::AuthResult: {
                    util::ByteReader r(tx.payload);
                    std::string truck = r.str();
                    bool verified = r.u8() != 0;
                    auto it = trucks_.find(truck);
                    if (it == trucks_.end()) throw LedgerError("load: auth for unknown truck");
                    if (verified) {
                        it->second.digest = util::sha256(it->second.digest);
                        it->second.round += 1;
                    }
                    break;
                }
                case TxKind::PlatoonRecord:
                    records_.push_back(decode_record(tx.payload));
                    break;
                case TxKind::RetrievalEvent:
                    break;  // reconstructed on demand from the chain
            }
        }
    }
    clock_ms_ = max_ts;
}

Ledger Ledger::load(const std::string& path, std::vector<std::string> companies,
                    EndorsementPolicy policy, std::vector<acl::AccessControlRule> rules,
                    uint64_t seed) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw LedgerError("load: cannot open '" + path + "'");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() < 5 || data.compare(0, 5, "PLGR1") != 0)
        throw LedgerError("load: bad snapshot magic");
    Bytes body(data.begin() + 5, data.end());
    util::ByteReader r(body);

    std::vector<Block> chain;
    try {
        while (!r.done()) {
            Bytes block_bytes = r.bytes();
            util::ByteReader b(block_bytes);
            Block blk;
            blk.height = b.u64();
            blk.prev_hash = b.bytes();
            uint32_t ntx = b.u32();
            for (uint32_t i = 0; i < ntx; ++i) {
                Transaction tx;
                tx.kind = static_cast<TxKind>(b.u8());
                tx.payload = b.bytes();
                tx.submitter = b.str();
                tx.timestamp_ms = b.u64();
                uint32_t ne = b.u32();
                for (uint32_t j = 0; j < ne; ++j) tx.endorsements.push_back(b.str());
                tx.tx_id = b.bytes();
                blk.txs.push_back(std::move(tx));
            }
            blk.block_hash = b.bytes();
            if (!b.done()) throw LedgerError("load: trailing bytes in block record");
            chain.push_back(std::move(blk));
        }
    } catch (const LedgerError&) {
        throw;
    } catch (const std::exception& e) {
        throw LedgerError(std::string("load: malformed snapshot: ") + e.what());
    }
    if (chain.empty()) throw LedgerError("load: snapshot holds no blocks");

    Ledger led(std::move(companies), std::move(policy), std::move(rules), seed);
    std::unique_lock lock(led.mu_);
    try {
        led.replay(chain);
    } catch (const LedgerError&) {
        throw;
    } catch (const std::exception& e) {
        throw LedgerError(std::string("load: replay failed: ") + e.what());
    }
    return led;
}

void Ledger::corrupt_payload_for_test(size_t height, size_t tx_index, size_t byte_index) {
    std::unique_lock lock(mu_);
    if (height >= chain_.size()) throw LedgerError("corrupt: height out of range");
    auto& txs = chain_[height].txs;
    if (tx_index >= txs.size()) throw LedgerError("corrupt: tx out of range");
    auto& payload = txs[tx_index].payload;
    if (payload.empty()) throw LedgerError("corrupt: empty payload");
    payload[byte_index % payload.size()] ^= 0x01;
}

}  // namespace ledger
