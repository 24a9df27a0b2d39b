#include "platoon/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "platoon/formation/scenario.hpp"
#include "platoon/ledger/ledger.hpp"
#include "platoon/zkp/scheme.hpp"

namespace cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<std::string> companies_for(int n) {
    if (n < 1) throw std::invalid_argument("company count must be >= 1");
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("Company_" + std::to_string(i));
    return out;
}

// "k-of-total" with the default three-peer latency profile, extended with
// slower peers when total > 3.
ledger::EndorsementPolicy parse_policy(const std::string& text) {
    auto sep = text.find("-of-");
    if (sep == std::string::npos)
        throw std::invalid_argument("policy must look like '2-of-3' or '2-of-any'");
    size_t k = std::stoul(text.substr(0, sep));
    std::string total_str = text.substr(sep + 4);
    size_t total = total_str == "any" ? std::max<size_t>(3, k) : std::stoul(total_str);
    ledger::EndorsementPolicy p = ledger::EndorsementPolicy::default_policy(1);
    while (p.endorsers.size() < total) {
        auto last = p.endorsers.back();
        p.endorsers.push_back({"peer" + std::to_string(p.endorsers.size() + 1),
                               last.delay_ms + 150, last.service_ms});
    }
    p.endorsers.resize(total);
    p.k = k;
    p.validate();
    return p;
}

std::vector<acl::AccessControlRule> load_rules(const std::string& path) {
    if (path.empty()) return ledger::default_rules();
    std::ifstream in(path);
    if (!in.good()) throw std::invalid_argument("cannot open rules file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return acl::parse_rules(text);
}

// Deterministic client-side credentials: the truck's identity material and
// one prover key per company, all derived from (seed, truck id).
struct TruckCredentials {
    zkp::TruckIdentity identity;
    zkp::DigestChain chain0;
    std::vector<zkp::KeyPair> pairs;
};

TruckCredentials derive_credentials(uint64_t seed, const std::string& truck_id, int n) {
    util::Drbg root = util::Drbg(seed).child("truck|" + truck_id);
    util::Drbg id_rng = root.child("identity");
    TruckCredentials creds{zkp::TruckIdentity::random(id_rng), zkp::DigestChain{}, {}};
    creds.chain0 = zkp::derive_digest(creds.identity);
    for (const std::string& company : companies_for(n)) {
        util::Drbg key_rng = root.child("keys|" + company);
        creds.pairs.push_back(zkp::key_gen(key_rng, company, truck_id));
    }
    return creds;
}

std::vector<zkp::VerifierKey> verifier_keys(const TruckCredentials& creds) {
    std::vector<zkp::VerifierKey> keys;
    for (const auto& kp : creds.pairs) keys.push_back(kp.verifier);
    return keys;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& fallback) {
    if (out_path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out.good()) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    out << text;
}

ledger::Ledger open_ledger(const std::string& path, int n, const std::string& policy,
                           const std::string& rules_path, uint64_t seed, bool must_exist) {
    if (path.empty()) throw std::invalid_argument("--ledger is required for this command");
    if (std::filesystem::exists(path))
        return ledger::Ledger::load(path, companies_for(n), parse_policy(policy),
                                    load_rules(rules_path), seed);
    if (must_exist) throw std::invalid_argument("ledger snapshot '" + path + "' does not exist");
    return ledger::Ledger(companies_for(n), parse_policy(policy), load_rules(rules_path), seed);
}

int usage_error(std::ostream& err, const std::string& what) {
    err << "error: " << what << "\n";
    return kExitUsage;
}

}  // namespace

int cmd_keygen(const KeygenOpts& o, std::ostream& out, std::ostream& err) {
    try {
        if (o.truck_id.empty()) return usage_error(err, "truck id is required");
        TruckCredentials creds = derive_credentials(o.seed, o.truck_id, o.n);
        json keys = json::array();
        for (const auto& kp : creds.pairs) {
            keys.push_back({{"company_id", kp.prover.company_id},
                            {"sk_hex", util::to_hex(kp.prover.sk.to_bytes_be())},
                            {"pk_hex", util::to_hex(bls::g2_to_bytes(kp.verifier.pk))}});
        }
        json doc{{"truck_id", o.truck_id},
                 {"n", o.n},
                 {"round", 0},
                 {"digest0_hex", util::to_hex(creds.chain0.current())},
                 {"keys", keys}};
        emit(doc.dump(2) + "\n", o.out_path, out);
        return kExitOk;
    } catch (const std::exception& e) {
        return usage_error(err, e.what());
    }
}

int cmd_register(const RegisterOpts& o, std::ostream& out, std::ostream& err) {
    try {
        if (o.truck_id.empty()) return usage_error(err, "truck id is required");
        TruckCredentials creds = derive_credentials(o.seed, o.truck_id, o.n);
        ledger::Ledger led =
            open_ledger(o.ledger_path, o.n, o.policy, o.rules_path, o.seed, false);
        std::string owner = o.owner.empty() ? companies_for(o.n).front() : o.owner;
        ledger::TxReceipt r =
            led.register_truck(owner, creds.chain0.current(), verifier_keys(creds));
        led.save(o.ledger_path);
        json doc{{"registered", true},
                 {"truck_id", o.truck_id},
                 {"owner", owner},
                 {"height", r.height},
                 {"tx_id_hex", util::to_hex(r.tx_id)}};
        out << doc.dump(2) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        return usage_error(err, e.what());
    }
}

int cmd_authenticate(const AuthenticateOpts& o, std::ostream& out, std::ostream& err) {
    ledger::AuthOutcome outcome;
    try {
        if (o.truck_id.empty()) return usage_error(err, "truck id is required");
        TruckCredentials creds = derive_credentials(o.seed, o.truck_id, o.n);
        ledger::Ledger led = open_ledger(o.ledger_path, o.n, o.policy, o.rules_path, o.seed, true);
        if (!led.truck_registered(o.truck_id))
            return usage_error(err, "truck '" + o.truck_id + "' is not registered");

        uint64_t round = led.stored_round(o.truck_id);
        if (o.replay_last_proof) {
            if (round == 0) return usage_error(err, "no previous round to replay");
            round -= 1;
        }
        zkp::DigestChain chain = creds.chain0.advance_to(round);

        auto t0 = Clock::now();
        std::vector<zkp::Proof> proofs;
        for (const auto& kp : creds.pairs) proofs.push_back(zkp::proof_gen(chain, kp.prover));
        double proof_wall = ms_since(t0);

        t0 = Clock::now();
        zkp::AggregatedProof agg = zkp::proof_aggregate(proofs);
        double agg_wall = ms_since(t0);

        outcome = led.submit_auth(agg, o.truck_id);
        if (outcome.verified) {
            // Successful join: the pipeline appends the platoon record.
            ledger::PlatoonRecord rec;
            rec.truck_id = o.truck_id;
            rec.owner = led.truck_owner(o.truck_id);
            rec.platoon_id = "P1";
            rec.joined_at_ms = led.now_ms();
            rec.route_segment = "join@round" + std::to_string(outcome.round);
            led.store_platoon_record(rec, ledger::kPipelineParticipant);
        }
        led.save(o.ledger_path);

        json doc{{"verified", outcome.verified},
                 {"round", outcome.round},
                 {"n", o.n},
                 {"reason", outcome.reason},
                 {"gamma_breakdown_ms",
                  {{"proof_gen_wall_ms", proof_wall},
                   {"aggregate_wall_ms", agg_wall},
                   {"endorsement_model_ms", outcome.endorsement_ms},
                   {"verify_wall_ms", outcome.verify_wall_ms}}}};
        out << doc.dump(2) << "\n";
    } catch (const std::exception& e) {
        return usage_error(err, e.what());
    }
    return outcome.verified ? kExitOk : kExitVerificationFailure;
}

int cmd_bench_verify(const BenchVerifyOpts& o, std::ostream& out, std::ostream& err) {
    try {
        if (o.n_max < 2) return usage_error(err, "--n must be >= 2");
        if (o.trials < 1) return usage_error(err, "--trials must be >= 1");
        util::Drbg rng(o.seed);
        std::ostringstream csv;
        csv << "# agg_ms and seq_ms are wall-clock columns (non-deterministic)\n";
        csv << "n,agg_ms,seq_ms,agg_pairings,seq_pairings\n";
        for (int n = 1; n <= o.n_max; ++n) {
            zkp::TruckIdentity id = zkp::TruckIdentity::random(rng);
            zkp::DigestChain chain = zkp::derive_digest(id);
            std::vector<zkp::Proof> proofs;
            std::vector<zkp::VerifierKey> keys;
            for (int i = 0; i < n; ++i) {
                zkp::KeyPair kp = zkp::key_gen(rng, "Company_" + std::to_string(i + 1), "bench");
                proofs.push_back(zkp::proof_gen(chain, kp.prover));
                keys.push_back(kp.verifier);
            }
            zkp::AggregatedProof agg = zkp::proof_aggregate(proofs);
            zkp::AggregatedVerifierKey apk = zkp::verifier_key_aggregate(keys);

            bls::reset_pairing_call_count();
            auto t0 = Clock::now();
            for (int t = 0; t < o.trials; ++t) {
                if (!zkp::verify(agg, chain.current(), apk)) throw std::logic_error("bench verify");
            }
            double agg_ms = ms_since(t0) / o.trials;
            uint64_t agg_pairings = bls::pairing_call_count() / o.trials;

            bls::reset_pairing_call_count();
            t0 = Clock::now();
            for (int t = 0; t < o.trials; ++t) {
                if (!zkp::verify_sequential(proofs, chain.current(), keys))
                    throw std::logic_error("bench verify_sequential");
            }
            double seq_ms = ms_since(t0) / o.trials;
            uint64_t seq_pairings = bls::pairing_call_count() / o.trials;

            csv << n << ',' << agg_ms << ',' << seq_ms << ',' << agg_pairings << ','
                << seq_pairings << "\n";
        }
        emit(csv.str(), o.out_path, out);
        return kExitOk;
    } catch (const std::exception& e) {
        return usage_error(err, e.what());
    }
}

int cmd_bench_ledger(const BenchLedgerOpts& o, std::ostream& out, std::ostream& err) {
    try {
        std::vector<ledger::EndorsementPolicy> policies;
        if (o.policy) {
            policies.push_back(parse_policy(*o.policy));
        } else {
            for (size_t k : {1, 2, 3})
                policies.push_back(ledger::EndorsementPolicy::default_policy(k));
        }
        std::vector<double> rates;
        if (o.send_rate_tps) {
            rates.push_back(*o.send_rate_tps);
        } else {
            for (double r = 5; r <= 50; r += 5) rates.push_back(r);
        }
        std::ostringstream csv;
        csv << ledger::bench_csv_header() << "\n";
        for (const auto& policy : policies) {
            for (double rate : rates) {
                ledger::BenchResult r = ledger::run_bench(policy, rate, o.duration_s, o.seed);
                csv << ledger::bench_csv_row(r) << "\n";
            }
        }
        emit(csv.str(), o.out_path, out);
        return kExitOk;
    } catch (const std::exception& e) {
        return usage_error(err, e.what());
    }
}

int cmd_simulate_formation(const SimulateFormationOpts& o, std::ostream& out, std::ostream& err) {
    formation::ScenarioFile sf;
    try {
        sf = o.scenario_path.empty() ? formation::default_scenario()
                                     : formation::load_scenario(o.scenario_path);
    } catch (const std::exception& e) {
        return usage_error(err, std::string("scenario: ") + e.what());
    }
    try {
        std::vector<formation::Strategy> strategies;
        if (o.strategies.empty()) {
            strategies = {formation::Strategy::SecondCatchup, formation::Strategy::SlowDown,
                          formation::Strategy::Hybrid};
        } else {
            for (const auto& s : o.strategies)
                strategies.push_back(formation::strategy_from_string(s));
        }

        bool disagreement = false;
        std::ostringstream csv;
        csv << "n,strategy,gamma_s,theta_s,total_s\n";
        for (formation::Strategy strat : strategies) {
            auto rows = formation::sweep_companies(sf.scenario, strat, o.n_from, o.n_to);
            // Cross-check the closed form against the integrator once per
            // strategy; theta does not depend on the sweep variable.
            formation::SimResult sim = formation::simulate(sf.scenario, strat, 0.001);
            double closed = rows.front().theta_s;
            double measured = sim.timeline.theta_s;
            double rel = std::fabs(measured - closed) / std::max(closed, 1e-12);
            if (rel > 0.01) {
                disagreement = true;
                err << "warning: " << formation::to_string(strat)
                    << ": integrator disagrees with closed form by " << rel * 100 << "%\n";
            }
            for (const auto& row : rows) {
                csv << row.n << ',' << formation::to_string(strat) << ',' << row.gamma_s << ','
                    << row.theta_s << ',' << row.total_s << "\n";
            }
        }
        emit(csv.str(), o.out_path, out);
        return disagreement ? kExitVerificationFailure : kExitOk;
    } catch (const std::exception& e) {
        return usage_error(err, e.what());
    }
}

int cmd_retrieve(const RetrieveOpts& o, std::ostream& out, std::ostream& err) {
    try {
        if (o.requester.empty()) return usage_error(err, "requester is required");
        ledger::RecordQuery q;
        if (o.query_by == "owner") q.by = ledger::RecordQuery::By::Owner;
        else if (o.query_by == "truck") q.by = ledger::RecordQuery::By::Truck;
        else if (o.query_by == "platoon") q.by = ledger::RecordQuery::By::Platoon;
        else return usage_error(err, "query kind must be owner|truck|platoon");
        q.value = o.query_value;

        ledger::Ledger led = open_ledger(o.ledger_path, o.n, o.policy, o.rules_path, o.seed, true);
        auto records = led.retrieve_records(q, o.requester);
        led.save(o.ledger_path);  // the retrieval event is on the chain

        json arr = json::array();
        for (const auto& r : records) {
            arr.push_back({{"truck_id", r.truck_id},
                           {"owner", r.owner},
                           {"platoon_id", r.platoon_id},
                           {"joined_at_ms", r.joined_at_ms},
                           {"left_at_ms", r.left_at_ms ? json(*r.left_at_ms) : json()},
                           {"route_segment", r.route_segment}});
        }
        json doc{{"requester", o.requester}, {"count", records.size()}, {"records", arr}};
        out << doc.dump(2) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        return usage_error(err, e.what());
    }
}

int cmd_rules_check(const RulesCheckOpts& o, std::ostream& out, std::ostream& err) {
    std::vector<acl::AccessControlRule> rules;
    try {
        rules = load_rules(o.rules_path);
        // Round-trip sanity: the printed form must parse back.
        acl::parse_rules(acl::print_rules(rules));
    } catch (const std::exception& e) {
        return usage_error(err, e.what());
    }
    if (o.participant.empty()) {
        out << acl::print_rules(rules);
        return kExitOk;
    }
    try {
        acl::AccessRequest req;
        req.participant_id = o.participant;
        if (o.operation == "READ") req.operation = acl::Operation::Read;
        else if (o.operation == "WRITE") req.operation = acl::Operation::Write;
        else return usage_error(err, "operation must be READ or WRITE");
        req.resource_id = o.resource;
        auto parse_attrs = [](const std::vector<std::string>& kvs) {
            std::map<std::string, std::string> m;
            for (const auto& kv : kvs) {
                auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw std::invalid_argument("attribute must be key=value: " + kv);
                m[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            return m;
        };
        req.participant_attributes = parse_attrs(o.participant_attrs);
        req.resource_attributes = parse_attrs(o.resource_attrs);

        acl::Decision d = acl::evaluate(rules, req);
        json skipped = json::array();
        for (const auto& s : d.skipped) skipped.push_back({{"rule", s.rule}, {"error", s.error}});
        json doc{{"decision", acl::to_string(d.action)},
                 {"matched_rule", d.matched_rule},
                 {"skipped", skipped}};
        out << doc.dump(2) << "\n";
        return d.action == acl::Action::Allow ? kExitOk : kExitVerificationFailure;
    } catch (const std::exception& e) {
        return usage_error(err, e.what());
    }
}

}  // namespace cli
