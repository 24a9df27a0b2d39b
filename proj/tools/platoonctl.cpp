// Command-line front end for the platoon authentication toolkit: key
// issuance, truck registration, aggregated-proof authentication against the
// ledger simulator, benchmark sweeps, formation-time simulation, record
// retrieval, and access-rule checks.

#include <iostream>

#include "CLI11.hpp"
#include "platoon/cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Aggregated zero-knowledge authentication toolkit for mixed-fleet platooning"};
    app.require_subcommand(1);

    cli::KeygenOpts keygen;
    CLI::App* c_keygen = app.add_subcommand("keygen", "Derive a truck's key set and digest");
    c_keygen->add_option("truck_id", keygen.truck_id, "Truck identifier")->required();
    c_keygen->add_option("--seed", keygen.seed, "Deterministic seed");
    c_keygen->add_option("--n", keygen.n, "Number of companies");
    c_keygen->add_option("--out", keygen.out_path, "Write JSON here instead of stdout");

    cli::RegisterOpts reg;
    CLI::App* c_reg = app.add_subcommand("register", "Register a truck on the ledger");
    c_reg->add_option("truck_id", reg.truck_id)->required();
    c_reg->add_option("--seed", reg.seed);
    c_reg->add_option("--n", reg.n);
    c_reg->add_option("--owner", reg.owner, "Owning company (default: first company)");
    c_reg->add_option("--policy", reg.policy, "Endorsement policy, e.g. 2-of-3");
    c_reg->add_option("--ledger", reg.ledger_path, "Ledger snapshot path")->required();
    c_reg->add_option("--rules", reg.rules_path, "Access policy file");

    cli::AuthenticateOpts auth;
    CLI::App* c_auth = app.add_subcommand("authenticate", "Run the aggregated authentication");
    c_auth->add_option("truck_id", auth.truck_id)->required();
    c_auth->add_option("--seed", auth.seed);
    c_auth->add_option("--n", auth.n);
    c_auth->add_option("--policy", auth.policy);
    c_auth->add_option("--ledger", auth.ledger_path)->required();
    c_auth->add_option("--rules", auth.rules_path);
    c_auth->add_flag("--replay-last-proof", auth.replay_last_proof,
                     "Resubmit the previous round's proof (expected to fail)");

    cli::BenchVerifyOpts bv;
    CLI::App* c_bv = app.add_subcommand("bench-verify",
                                        "Aggregated vs sequential verification cost");
    c_bv->add_option("--seed", bv.seed);
    c_bv->add_option("--n", bv.n_max, "Largest proof count");
    c_bv->add_option("--trials", bv.trials);
    c_bv->add_option("--out", bv.out_path, "CSV output path");

    cli::BenchLedgerOpts bl;
    CLI::App* c_bl = app.add_subcommand("bench-ledger", "Endorsement/ordering throughput model");
    c_bl->add_option("--seed", bl.seed);
    std::string bl_policy;
    CLI::Option* bl_policy_opt = c_bl->add_option("--policy", bl_policy, "e.g. 2-of-3");
    double bl_rate = 0;
    CLI::Option* bl_rate_opt = c_bl->add_option("--send-rate", bl_rate, "tx/s");
    c_bl->add_option("--duration", bl.duration_s, "Simulated seconds per point");
    c_bl->add_option("--out", bl.out_path, "CSV output path");

    cli::SimulateFormationOpts sim;
    CLI::App* c_sim = app.add_subcommand("simulate-formation", "Formation-time tables");
    c_sim->add_option("--scenario", sim.scenario_path, "Scenario file (default: built-in)");
    c_sim->add_option("--strategy", sim.strategies,
                      "2nd-catchup | slow-down | hybrid (repeatable; default all)");
    c_sim->add_option("--n-from", sim.n_from);
    c_sim->add_option("--n-to", sim.n_to);
    c_sim->add_option("--out", sim.out_path, "CSV output path");

    cli::RetrieveOpts ret;
    CLI::App* c_ret = app.add_subcommand("retrieve", "Fetch platoon records under the ACL");
    c_ret->add_option("requester", ret.requester)->required();
    c_ret->add_option("query_by", ret.query_by, "owner|truck|platoon")->required();
    c_ret->add_option("query_value", ret.query_value)->required();
    c_ret->add_option("--seed", ret.seed);
    c_ret->add_option("--n", ret.n);
    c_ret->add_option("--policy", ret.policy);
    c_ret->add_option("--ledger", ret.ledger_path)->required();
    c_ret->add_option("--rules", ret.rules_path);

    cli::RulesCheckOpts rc;
    CLI::App* c_rc = app.add_subcommand("rules-check", "Parse rules; optionally evaluate");
    c_rc->add_option("--rules", rc.rules_path, "Rules file (default: built-in policy)");
    c_rc->add_option("--participant", rc.participant);
    c_rc->add_option("--operation", rc.operation, "READ|WRITE");
    c_rc->add_option("--resource", rc.resource);
    c_rc->add_option("--pattr", rc.participant_attrs, "participant attribute key=value");
    c_rc->add_option("--rattr", rc.resource_attrs, "resource attribute key=value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        // CLI11 returns 0 for --help; anything else is a usage error.
        return code == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    if (c_keygen->parsed()) return cli::cmd_keygen(keygen, std::cout, std::cerr);
    if (c_reg->parsed()) return cli::cmd_register(reg, std::cout, std::cerr);
    if (c_auth->parsed()) return cli::cmd_authenticate(auth, std::cout, std::cerr);
    if (c_bv->parsed()) return cli::cmd_bench_verify(bv, std::cout, std::cerr);
    if (c_bl->parsed()) {
        if (*bl_policy_opt) bl.policy = bl_policy;
        if (*bl_rate_opt) bl.send_rate_tps = bl_rate;
        return cli::cmd_bench_ledger(bl, std::cout, std::cerr);
    }
    if (c_sim->parsed()) return cli::cmd_simulate_formation(sim, std::cout, std::cerr);
    if (c_ret->parsed()) return cli::cmd_retrieve(ret, std::cout, std::cerr);
    if (c_rc->parsed()) return cli::cmd_rules_check(rc, std::cout, std::cerr);
    return cli::kExitUsage;
}
