// Acceptance suite: ten end-to-end criteria with pinned tolerances, one
// pass/fail line each. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <vector>

#include "platoon/formation/scenario.hpp"
#include "platoon/ledger/ledger.hpp"
#include "platoon/zkp/scheme.hpp"
#include "../scenario_gen.hpp"

using Clock = std::chrono::steady_clock;
using util::Bytes;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Criterion {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Criterion> g_results;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    g_results.push_back({id, name, pass, detail});
    std::printf("[%s] criterion %2d: %-28s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

struct Instance {
    zkp::DigestChain chain;
    std::vector<zkp::Proof> proofs;
    std::vector<zkp::VerifierKey> keys;
    zkp::AggregatedProof agg;
    zkp::AggregatedVerifierKey apk;
};

Instance make_instance(util::Drbg& rng, size_t n, uint64_t rounds = 0) {
    Instance inst;
    zkp::TruckIdentity id = zkp::TruckIdentity::random(rng, 6 + rng.uniform(24));
    inst.chain = zkp::derive_digest(id).advance_to(rounds);
    for (size_t i = 0; i < n; ++i) {
        zkp::KeyPair kp = zkp::key_gen(rng, "C" + std::to_string(i + 1), "T");
        inst.proofs.push_back(zkp::proof_gen(inst.chain, kp.prover));
        inst.keys.push_back(kp.verifier);
    }
    inst.agg = zkp::proof_aggregate(inst.proofs);
    inst.apk = zkp::verifier_key_aggregate(inst.keys);
    return inst;
}

// ---- 1. Correctness --------------------------------------------------------

void criterion_correctness() {
    util::Drbg rng(1001);
    auto t0 = Clock::now();
    size_t per_n[11] = {0};
    size_t passed = 0;
    const size_t total = 1000;
    for (size_t run = 0; run < total; ++run) {
        size_t n = 1 + rng.uniform(10);
        Instance inst = make_instance(rng, n, rng.uniform(3));
        if (zkp::verify(inst.agg, inst.chain.current(), inst.apk)) ++passed;
        ++per_n[n];
    }
    double secs = ms_since(t0) / 1000.0;
    bool cover = true;
    for (int n = 1; n <= 10; ++n) cover = cover && per_n[n] >= 50;
    std::ostringstream d;
    d << passed << "/" << total << " verified, " << secs << " s"
      << (cover ? ", >=50 instances per n in 1..10" : ", insufficient n coverage");
    report(1, "correctness", passed == total && secs < 60.0 && cover, d.str());
}

// ---- 2. Soundness under bit flips ------------------------------------------

void criterion_tamper() {
    util::Drbg rng(1002);
    size_t false_accepts = 0, trials = 0;
    for (size_t run = 0; run < 100; ++run) {
        size_t n = 1 + rng.uniform(10);
        Instance inst = make_instance(rng, n);

        // Aggregated proof serialization.
        {
            Bytes ser = bls::g1_to_bytes(inst.agg.omega);
            size_t bit = rng.uniform(ser.size() * 8);
            ser[bit / 8] ^= uint8_t(1) << (bit % 8);
            ++trials;
            try {
                zkp::AggregatedProof forged{bls::g1_from_bytes(ser), inst.agg.n, inst.agg.round};
                if (zkp::verify(forged, inst.chain.current(), inst.apk)) ++false_accepts;
            } catch (const bls::DecodeError&) {
            }
        }
        // Digest.
        {
            Bytes digest = inst.chain.current();
            size_t bit = rng.uniform(digest.size() * 8);
            digest[bit / 8] ^= uint8_t(1) << (bit % 8);
            ++trials;
            if (zkp::verify(inst.agg, digest, inst.apk)) ++false_accepts;
        }
        // Aggregated verifier key serialization.
        {
            Bytes ser = bls::g2_to_bytes(inst.apk.pk);
            size_t bit = rng.uniform(ser.size() * 8);
            ser[bit / 8] ^= uint8_t(1) << (bit % 8);
            ++trials;
            try {
                zkp::AggregatedVerifierKey forged{bls::g2_from_bytes(ser), inst.apk.n};
                if (zkp::verify(inst.agg, inst.chain.current(), forged)) ++false_accepts;
            } catch (const bls::DecodeError&) {
            }
        }
    }
    std::ostringstream d;
    d << trials << " bit flips across proof/digest/key, " << false_accepts << " false accepts";
    report(2, "tamper soundness", false_accepts == 0, d.str());
}

// ---- 3. Aggregation flatness ------------------------------------------------

void criterion_flatness() {
    util::Drbg rng(1003);
    const int trials = 10;
    bool counts_ok = true;
    std::vector<double> agg_ms(11), seq_ms(11);
    for (size_t n = 1; n <= 10; ++n) {
        Instance inst = make_instance(rng, n);
        bls::reset_pairing_call_count();
        auto t0 = Clock::now();
        for (int t = 0; t < trials; ++t) zkp::verify(inst.agg, inst.chain.current(), inst.apk);
        agg_ms[n] = ms_since(t0) / trials;
        counts_ok = counts_ok && bls::pairing_call_count() == uint64_t(2 * trials);

        bls::reset_pairing_call_count();
        t0 = Clock::now();
        for (int t = 0; t < trials; ++t)
            zkp::verify_sequential(inst.proofs, inst.chain.current(), inst.keys);
        seq_ms[n] = ms_since(t0) / trials;
        counts_ok = counts_ok && bls::pairing_call_count() == uint64_t(2 * n * trials);
    }
    double ratio = agg_ms[10] / agg_ms[1];

    // Least-squares fit seq_ms ~ a + b*n.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n = 1; n <= 10; ++n) {
        sx += n;
        sy += seq_ms[n];
        sxx += double(n) * n;
        sxy += n * seq_ms[n];
    }
    double b = (10 * sxy - sx * sy) / (10 * sxx - sx * sx);
    double a = (sy - b * sx) / 10;
    double ss_res = 0, ss_tot = 0, mean = sy / 10;
    for (int n = 1; n <= 10; ++n) {
        double pred = a + b * n;
        ss_res += (seq_ms[n] - pred) * (seq_ms[n] - pred);
        ss_tot += (seq_ms[n] - mean) * (seq_ms[n] - mean);
    }
    double r2 = 1 - ss_res / ss_tot;

    bool pass = counts_ok && ratio >= 0.8 && ratio <= 1.2 && r2 >= 0.95;
    std::ostringstream d;
    d << "pairings 2 vs 2n " << (counts_ok ? "exact" : "WRONG") << "; agg n10/n1 = " << ratio
      << "; sequential R^2 = " << r2;
    report(3, "aggregation flatness", pass, d.str());
}

// ---- 4. Aggregation-stage cost ----------------------------------------------

void criterion_aggregation_cost() {
    util::Drbg rng(1004);
    Instance inst = make_instance(rng, 10);
    const int reps = 50;

    auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) zkp::proof_aggregate(inst.proofs);
    double proof_agg_ms = ms_since(t0) / reps;

    t0 = Clock::now();
    for (int i = 0; i < reps; ++i) zkp::verifier_key_aggregate(inst.keys);
    double key_agg_ms = ms_since(t0) / reps;

    t0 = Clock::now();
    for (int i = 0; i < 10; ++i) zkp::verify(inst.agg, inst.chain.current(), inst.apk);
    double verify_ms = ms_since(t0) / 10;

    bool pass = proof_agg_ms < 0.05 * verify_ms && key_agg_ms < 0.05 * verify_ms;
    std::ostringstream d;
    d << "proof agg " << proof_agg_ms << " ms, key agg " << key_agg_ms << " ms, verify "
      << verify_ms << " ms (n = 10)";
    report(4, "aggregation-stage cost", pass, d.str());
}

// ---- 5. Authentication-time model -------------------------------------------

void criterion_gamma_model() {
    formation::LatencyModel lat;  // 255 / 2 / 0.4 / 1100 / 512 ms
    double g2 = formation::auth_time_s(2, lat);
    double g10 = formation::auth_time_s(10, lat);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int n = 2; n <= 10; ++n) {
        double g = formation::auth_time_s(n, lat);
        sx += n;
        sy += g;
        sxx += double(n) * n;
        sxy += n * g;
        ++count;
    }
    double slope_s = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    bool pass = std::fabs(g2 - 2.1) <= 0.1 && std::fabs(g10 - 4.2) <= 0.2 &&
                std::fabs(slope_s - 0.255) <= 0.005;
    std::ostringstream d;
    d << "Gamma(2) = " << g2 << " s, Gamma(10) = " << g10 << " s, slope = " << slope_s * 1000
      << " ms/company";
    report(5, "authentication-time model", pass, d.str());
}

// ---- 6. Kinematics oracle equivalence ---------------------------------------

void criterion_kinematics() {
    util::Drbg rng(1006);
    const formation::Strategy all[] = {formation::Strategy::SecondCatchup,
                                       formation::Strategy::SlowDown,
                                       formation::Strategy::Hybrid};
    size_t within = 0, total = 0;
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        formation::FormationScenario sc = random_scenario(rng);
        double gamma = formation::auth_time_s(sc.companies, sc.latency);
        for (formation::Strategy strat : all) {
            double closed = formation::theta(sc, gamma, strat);
            double measured = formation::simulate(sc, strat, 0.001).timeline.theta_s;
            double rel = std::fabs(measured - closed) / std::max(closed, 1e-12);
            worst = std::max(worst, rel);
            ++total;
            if (rel <= 0.01) ++within;
        }
    }

    formation::ScenarioFile paper = formation::default_scenario();
    double gamma = formation::auth_time_s(2, paper.scenario.latency);
    double t2nd = formation::theta(paper.scenario, gamma, formation::Strategy::SecondCatchup);
    double tslow = formation::theta(paper.scenario, gamma, formation::Strategy::SlowDown);
    double thyb = formation::theta(paper.scenario, gamma, formation::Strategy::Hybrid);
    bool paper_ok = std::fabs(t2nd - tslow) / t2nd <= 0.005 && thyb < t2nd && thyb < tslow;

    auto rows = formation::sweep_companies(paper.scenario, formation::Strategy::SecondCatchup, 2,
                                           10);
    bool invariant = true;
    for (const auto& row : rows) invariant = invariant && row.theta_s == rows.front().theta_s;

    bool pass = within == total && paper_ok && invariant;
    std::ostringstream d;
    d << within << "/" << total << " within 1% (worst " << worst * 100 << "%); 2nd = " << t2nd
      << " s, slow = " << tslow << " s, hybrid = " << thyb << " s; theta constant in n: "
      << (invariant ? "yes" : "no");
    report(6, "kinematics oracle", pass, d.str());
}

// ---- 7. Ledger immutability --------------------------------------------------

void criterion_immutability() {
    util::Drbg rng(1007);
    std::vector<std::string> companies{"Company_A", "Company_B", "Company_C"};
    ledger::Ledger led(companies, ledger::EndorsementPolicy::default_policy(1),
                       ledger::default_rules(), 1007);

    struct Truck {
        std::vector<zkp::KeyPair> pairs;
        zkp::DigestChain chain;
        std::string id;
    };
    std::vector<Truck> trucks;

    bool chain_ok = true;
    for (int op = 0; op < 500; ++op) {
        try {
            switch (rng.uniform(5)) {
                case 0: {
                    Truck t;
                    t.id = "T" + std::to_string(trucks.size());
                    zkp::TruckIdentity ident = zkp::TruckIdentity::random(rng);
                    t.chain = zkp::derive_digest(ident);
                    std::vector<zkp::VerifierKey> keys;
                    for (const auto& c : companies) {
                        zkp::KeyPair kp = zkp::key_gen(rng, c, t.id);
                        t.pairs.push_back(kp);
                        keys.push_back(kp.verifier);
                    }
                    led.register_truck(companies[rng.uniform(3)], t.chain.current(), keys);
                    trucks.push_back(std::move(t));
                    break;
                }
                case 1: {
                    if (trucks.empty()) break;
                    Truck& t = trucks[rng.uniform(trucks.size())];
                    auto at = t.chain.advance_to(led.stored_round(t.id));
                    std::vector<zkp::Proof> proofs;
                    for (const auto& kp : t.pairs) proofs.push_back(zkp::proof_gen(at, kp.prover));
                    led.submit_auth(zkp::proof_aggregate(proofs), t.id);
                    break;
                }
                case 2: {
                    ledger::PlatoonRecord rec;
                    rec.truck_id = "T" + std::to_string(rng.uniform(12));
                    rec.owner = companies[rng.uniform(3)];
                    rec.platoon_id = "P" + std::to_string(rng.uniform(4));
                    rec.joined_at_ms = led.now_ms();
                    led.store_platoon_record(
                        rec, rng.uniform(3) ? ledger::kPipelineParticipant : "Company_B");
                    break;
                }
                case 3:
                    led.retrieve_records(
                        {ledger::RecordQuery::By::Owner, companies[rng.uniform(3)]},
                        companies[rng.uniform(3)]);
                    break;
                default: {
                    if (trucks.empty()) break;
                    // Stale resubmission attempt.
                    Truck& t = trucks[rng.uniform(trucks.size())];
                    std::vector<zkp::Proof> proofs;
                    for (const auto& kp : t.pairs)
                        proofs.push_back(zkp::proof_gen(t.chain, kp.prover));
                    led.submit_auth(zkp::proof_aggregate(proofs), t.id);
                    break;
                }
            }
        } catch (const ledger::LedgerError&) {
        }
        if (op % 100 == 0) chain_ok = chain_ok && led.verify_chain();
    }
    chain_ok = chain_ok && led.verify_chain();

    size_t mutations = 0, detected = 0;
    auto blocks = led.blocks_snapshot();
    for (int trial = 0; trial < 150; ++trial) {
        size_t h = 1 + rng.uniform(blocks.size() - 1);
        if (blocks[h].txs.empty() || blocks[h].txs[0].payload.empty()) continue;
        ledger::Ledger copy = led;
        copy.corrupt_payload_for_test(h, 0, rng.uniform(1024));
        ++mutations;
        if (!copy.verify_chain()) ++detected;
    }
    bool pass = chain_ok && mutations > 0 && detected == mutations && led.verify_chain();
    std::ostringstream d;
    d << "chain valid after 500 fuzzed ops (height " << led.height() << "); " << detected << "/"
      << mutations << " mutations detected";
    report(7, "ledger immutability", pass, d.str());
}

// ---- 8. Replay rejection ------------------------------------------------------

void criterion_replay() {
    util::Drbg rng(1008);
    std::vector<std::string> companies{"Company_A", "Company_B", "Company_C"};
    ledger::Ledger led(companies, ledger::EndorsementPolicy::default_policy(2),
                       ledger::default_rules(), 1008);

    zkp::TruckIdentity ident = zkp::TruckIdentity::random(rng);
    zkp::DigestChain chain = zkp::derive_digest(ident);
    std::vector<zkp::KeyPair> pairs;
    std::vector<zkp::VerifierKey> keys;
    for (const auto& c : companies) {
        zkp::KeyPair kp = zkp::key_gen(rng, c, "T1");
        pairs.push_back(kp);
        keys.push_back(kp.verifier);
    }
    led.register_truck("Company_A", chain.current(), keys);

    size_t accepted = 0, replay_rejected = 0;
    for (int round = 0; round < 100; ++round) {
        std::vector<zkp::Proof> proofs;
        for (const auto& kp : pairs) proofs.push_back(zkp::proof_gen(chain, kp.prover));
        zkp::AggregatedProof agg = zkp::proof_aggregate(proofs);
        if (led.submit_auth(agg, "T1").verified) ++accepted;
        ledger::AuthOutcome replay = led.submit_auth(agg, "T1");
        if (!replay.verified && replay.reason == "stale round") ++replay_rejected;
        chain = chain.advance();
    }
    bool pass = accepted == 100 && replay_rejected == 100;
    std::ostringstream d;
    d << accepted << "/100 accepted, " << replay_rejected << "/100 replays rejected";
    report(8, "replay rejection", pass, d.str());
}

// ---- 9. Access control ---------------------------------------------------------

void criterion_acl() {
    util::Drbg rng(1009);
    // The published rule, triple-equals normalized.
    const std::string rule_text =
        "rule CompanyCanReadPlatoonRecord {\n"
        "  description: \"Allow company A to read platoon records.\"\n"
        "  participant(p): \"Company_A\"\n"
        "  operation: READ\n"
        "  resource(r): \"Platoon_Record\"\n"
        "  condition: \"r.owner.getIdentifier() == p.getIdentifier()\"\n"
        "  action: ALLOW\n"
        "}\n";
    bool parse_ok = true, owner_allow = true, others_deny = true;
    std::vector<acl::AccessControlRule> rules;
    try {
        rules.push_back(acl::parse_rule(rule_text));
    } catch (const std::exception&) {
        parse_ok = false;
    }
    if (parse_ok) {
        acl::AccessRequest req;
        req.operation = acl::Operation::Read;
        req.resource_id = "Platoon_Record";
        req.resource_attributes["owner"] = "Company_A";
        req.participant_id = "Company_A";
        owner_allow = acl::evaluate(rules, req).action == acl::Action::Allow;
        for (int i = 0; i < 200; ++i) {
            std::string other = "P" + util::to_hex(rng.bytes(4));
            if (other == "Company_A") continue;
            req.participant_id = other;
            acl::Decision d = acl::evaluate(rules, req);
            others_deny =
                others_deny && d.action == acl::Action::Deny && d.matched_rule == "default";
        }
    }

    // Every retrieval attempt leaves exactly one log entry.
    std::vector<std::string> companies{"Company_A", "Company_B", "Company_C"};
    ledger::Ledger led(companies, ledger::EndorsementPolicy::default_policy(1),
                       ledger::default_rules(), 1009);
    ledger::PlatoonRecord rec;
    rec.truck_id = "T1";
    rec.owner = "Company_A";
    rec.platoon_id = "P1";
    rec.joined_at_ms = 1;
    led.store_platoon_record(rec, ledger::kPipelineParticipant);

    auto read_log_count = [&led] {
        size_t c = 0;
        for (const auto& e : led.access_log())
            if (e.operation == acl::Operation::Read &&
                e.resource_id.rfind("Platoon_Record", 0) == 0)
                ++c;
        return c;
    };
    size_t attempts = 0;
    bool one_entry_each = true;
    for (int i = 0; i < 60; ++i) {
        size_t before = read_log_count();
        ledger::RecordQuery q;
        switch (rng.uniform(3)) {
            case 0: q = {ledger::RecordQuery::By::Owner, companies[rng.uniform(3)]}; break;
            case 1: q = {ledger::RecordQuery::By::Truck, "T" + std::to_string(rng.uniform(3))}; break;
            default: q = {ledger::RecordQuery::By::Platoon, "P" + std::to_string(rng.uniform(3))}; break;
        }
        led.retrieve_records(q, companies[rng.uniform(3)]);
        ++attempts;
        one_entry_each = one_entry_each && read_log_count() == before + 1;
    }

    bool pass = parse_ok && owner_allow && others_deny && one_entry_each;
    std::ostringstream d;
    d << "rule parses: " << (parse_ok ? "yes" : "no") << "; owner ALLOW: "
      << (owner_allow ? "yes" : "no") << "; 200 others DENY: " << (others_deny ? "yes" : "no")
      << "; " << attempts << " retrievals each logged once: " << (one_entry_each ? "yes" : "no");
    report(9, "access control", pass, d.str());
}

// ---- 10. Bench trends -----------------------------------------------------------

void criterion_bench_trends() {
    const uint64_t seed = 1010;
    ledger::BenchResult at30[4];
    for (size_t k = 1; k <= 3; ++k)
        at30[k] = ledger::run_bench(ledger::EndorsementPolicy::default_policy(k), 30, 20, seed);
    bool thr_mono = at30[1].throughput_tps >= at30[2].throughput_tps &&
                    at30[2].throughput_tps >= at30[3].throughput_tps;
    bool lat_mono = at30[1].lat_avg_ms <= at30[2].lat_avg_ms &&
                    at30[2].lat_avg_ms <= at30[3].lat_avg_ms;

    // 1-of-any latency flat below saturation (the default ordering service
    // saturates above 40 tx/s for k = 1).
    double base = 0, lo = 1e18, hi = 0;
    for (double rate : {5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0}) {
        double lat =
            ledger::run_bench(ledger::EndorsementPolicy::default_policy(1), rate, 20, seed)
                .lat_avg_ms;
        if (base == 0) base = lat;
        lo = std::min(lo, lat);
        hi = std::max(hi, lat);
    }
    bool flat = hi <= base * 1.10 && lo >= base * 0.90;

    bool pass = thr_mono && lat_mono && flat;
    std::ostringstream d;
    d << "throughput @30tps k=1..3: " << at30[1].throughput_tps << "/" << at30[2].throughput_tps
      << "/" << at30[3].throughput_tps << " tps; latency " << at30[1].lat_avg_ms << "/"
      << at30[2].lat_avg_ms << "/" << at30[3].lat_avg_ms << " ms; 1-of-any spread "
      << (hi - lo) / base * 100 << "%";
    report(10, "bench trends", pass, d.str());
}

}  // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    auto t0 = Clock::now();
    criterion_correctness();
    criterion_tamper();
    criterion_flatness();
    criterion_aggregation_cost();
    criterion_gamma_model();
    criterion_kinematics();
    criterion_immutability();
    criterion_replay();
    criterion_acl();
    criterion_bench_trends();

    int failures = 0;
    for (const auto& c : g_results)
        if (!c.pass) ++failures;
    std::printf("================\n%zu/%zu criteria passed (%.1f s)\n",
                g_results.size() - failures, g_results.size(), ms_since(t0) / 1000.0);
    return failures == 0 ? 0 : 1;
}
