#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cli {

// Exit codes shared by every subcommand.
constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct KeygenOpts {
    uint64_t seed = 1;
    int n = 3;
    std::string truck_id;
    std::string out_path;  // empty: stdout
};

struct RegisterOpts {
    uint64_t seed = 1;
    int n = 3;
    std::string truck_id;
    std::string owner;  // empty: first company
    std::string policy = "2-of-3";
    std::string ledger_path;
    std::string rules_path;  // empty: built-in default policy
};

struct AuthenticateOpts {
    uint64_t seed = 1;
    int n = 3;
    std::string truck_id;
    std::string policy = "2-of-3";
    std::string ledger_path;
    std::string rules_path;
    bool replay_last_proof = false;
};

struct BenchVerifyOpts {
    uint64_t seed = 1;
    int n_max = 10;
    int trials = 5;
    std::string out_path;
};

struct BenchLedgerOpts {
    uint64_t seed = 1;
    std::optional<std::string> policy;     // "k-of-total"; unset: k in {1,2,3}
    std::optional<double> send_rate_tps;   // unset: sweep 5..50 step 5
    double duration_s = 20;
    std::string out_path;
};

struct SimulateFormationOpts {
    std::string scenario_path;  // empty: built-in default scenario
    std::vector<std::string> strategies;  // empty: all three
    int n_from = 2;
    int n_to = 10;
    std::string out_path;
};

struct RetrieveOpts {
    uint64_t seed = 1;
    int n = 3;
    std::string requester;
    std::string query_by;  // owner | truck | platoon
    std::string query_value;
    std::string policy = "2-of-3";
    std::string ledger_path;
    std::string rules_path;
};

struct RulesCheckOpts {
    std::string rules_path;
    // Optional request to evaluate against the parsed rules.
    std::string participant;
    std::string operation;  // READ | WRITE
    std::string resource;
    std::vector<std::string> participant_attrs;  // key=value
    std::vector<std::string> resource_attrs;
};

int cmd_keygen(const KeygenOpts&, std::ostream& out, std::ostream& err);
int cmd_register(const RegisterOpts&, std::ostream& out, std::ostream& err);
int cmd_authenticate(const AuthenticateOpts&, std::ostream& out, std::ostream& err);
int cmd_bench_verify(const BenchVerifyOpts&, std::ostream& out, std::ostream& err);
int cmd_bench_ledger(const BenchLedgerOpts&, std::ostream& out, std::ostream& err);
int cmd_simulate_formation(const SimulateFormationOpts&, std::ostream& out, std::ostream& err);
int cmd_retrieve(const RetrieveOpts&, std::ostream& out, std::ostream& err);
int cmd_rules_check(const RulesCheckOpts&, std::ostream& out, std::ostream& err);

}  // namespace cli
