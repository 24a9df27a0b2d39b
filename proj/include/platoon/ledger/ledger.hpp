#pragma once

#include <map>
#include <optional>
#include <shared_mutex>

#include "platoon/acl/acl.hpp"
#include "platoon/ledger/bench.hpp"
#include "platoon/zkp/scheme.hpp"

namespace ledger {

using util::Bytes;

struct LedgerError : std::runtime_error {
    explicit LedgerError(const std::string& what) : std::runtime_error(what) {}
};

enum class TxKind : uint8_t {
    RegisterTruck = 1,
    StoreVerifierKeys = 2,
    AuthResult = 3,
    PlatoonRecord = 4,
    RetrievalEvent = 5,
};

struct Transaction {
    Bytes tx_id;
    TxKind kind;
    Bytes payload;
    std::string submitter;
    uint64_t timestamp_ms = 0;
    std::vector<std::string> endorsements;

    static Bytes compute_id(TxKind kind, const Bytes& payload, const std::string& submitter,
                            uint64_t timestamp_ms);
};

struct Block {
    uint64_t height = 0;
    Bytes prev_hash;
    std::vector<Transaction> txs;
    Bytes block_hash;

    static Bytes compute_hash(uint64_t height, const Bytes& prev_hash,
                              const std::vector<Transaction>& txs);
};

struct PlatoonRecord {
    std::string truck_id;
    std::string owner;
    std::string platoon_id;
    uint64_t joined_at_ms = 0;
    std::optional<uint64_t> left_at_ms;
    std::string route_segment;
    std::vector<std::pair<uint64_t, double>> position_trace;

    void validate() const;
};

struct AccessLogEntry {
    std::string participant_id;
    std::string resource_id;
    acl::Operation operation = acl::Operation::Read;
    acl::Action decision = acl::Action::Deny;
    uint64_t timestamp_ms = 0;
};

struct AuthOutcome {
    bool verified = false;
    double latency_ms = 0;       // modeled endorsement latency + measured verify time
    double endorsement_ms = 0;   // modeled, deterministic under the seed
    double verify_wall_ms = 0;   // measured on this machine
    std::string reason;
    uint64_t round = 0;
};

struct RecordQuery {
    enum class By { Owner, Truck, Platoon };
    By by = By::Owner;
    std::string value;
};

struct TxReceipt {
    Bytes tx_id;
    uint64_t height = 0;
};

// The shipped policy: the verification pipeline may write platoon records
// and read verifier keys; companies may read their own platoon records.
extern const char* kDefaultPolicyText;
std::vector<acl::AccessControlRule> default_rules();

// The participant id under which the verification pipeline acts.
extern const char* kPipelineParticipant;

// Append-only hash-chained ledger with k-of-n endorsement metadata, a
// verifier-key and digest registry, ACL-guarded platoon records, and an
// on-chain access log. Single writer, shared readers.
class Ledger {
public:
    Ledger(std::vector<std::string> companies, EndorsementPolicy policy,
           std::vector<acl::AccessControlRule> rules, uint64_t seed);

    Ledger(const Ledger& o);
    Ledger& operator=(const Ledger&) = delete;

    // One-time truck registration: the round-0 digest plus one verifier key
    // per company in the network.
    TxReceipt register_truck(const std::string& company_id, const Bytes& digest_round0,
                             const std::vector<zkp::VerifierKey>& keys);

    // Looks up the stored keys and digest, aggregates, verifies, collects
    // endorsements, commits the outcome, and on success advances the stored
    // digest chain atomically.
    AuthOutcome submit_auth(const zkp::AggregatedProof& agg, const std::string& truck_id);

    TxReceipt store_platoon_record(const PlatoonRecord& rec, const std::string& submitter);

    // Returns exactly the records the ACL lets the requester read; every
    // attempt appends one access-log entry.
    std::vector<PlatoonRecord> retrieve_records(const RecordQuery& q,
                                                const std::string& requester);

    bool verify_chain() const;

    uint64_t height() const;
    uint64_t now_ms() const;
    size_t truck_count() const;
    bool truck_registered(const std::string& truck_id) const;
    std::string truck_owner(const std::string& truck_id) const;
    uint64_t stored_round(const std::string& truck_id) const;
    std::vector<AccessLogEntry> access_log() const;
    std::vector<Block> blocks_snapshot() const;
    const std::vector<std::string>& companies() const { return companies_; }

    // Snapshot persistence: magic "PLGR1" then length-prefixed blocks.
    // Loading replays the chain, revalidates it, and rebuilds registries.
    void save(const std::string& path) const;
    static Ledger load(const std::string& path, std::vector<std::string> companies,
                       EndorsementPolicy policy, std::vector<acl::AccessControlRule> rules,
                       uint64_t seed);

    // Flips one committed payload byte in place (tamper-evidence tests).
    void corrupt_payload_for_test(size_t height, size_t tx_index, size_t byte_index);

private:
    struct TruckEntry {
        std::string owner;
        Bytes digest;
        uint64_t round = 0;
        std::vector<zkp::VerifierKey> keys;
    };

    TxReceipt commit_locked(TxKind kind, Bytes payload, const std::string& submitter,
                            std::vector<std::string> endorsements);
    void log_access_locked(const std::string& participant, const std::string& resource,
                           acl::Operation op, acl::Action decision);
    acl::Decision check_access(const std::string& participant, acl::Operation op,
                               const std::string& resource_id,
                               const std::map<std::string, std::string>& resource_attrs) const;
    bool verify_chain_locked() const;
    void replay(const std::vector<Block>& chain);

    mutable std::shared_mutex mu_;
    std::vector<std::string> companies_;
    EndorsementPolicy policy_;
    std::vector<acl::AccessControlRule> rules_;
    util::Drbg rng_;
    uint64_t clock_ms_ = 0;
    std::vector<Block> chain_;
    std::map<std::string, TruckEntry> trucks_;
    std::vector<PlatoonRecord> records_;
};

}  // namespace ledger
