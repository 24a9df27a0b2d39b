#pragma once

#include <string>
#include <vector>

#include "platoon/util/drbg.hpp"

namespace ledger {

// One simulated endorsing peer: a fixed response delay plus a single-server
// queue with the given service time. Jitter is applied multiplicatively.
struct EndorserModel {
    std::string id;
    double delay_ms = 500;
    double service_ms = 10;
};

struct EndorsementPolicy {
    size_t k = 2;  // endorsements required per transaction
    std::vector<EndorserModel> endorsers;
    // Ordering/validation service time grows with the endorsement count.
    double order_base_ms = 20;
    double order_per_endorsement_ms = 4;
    double jitter_frac = 0.03;

    void validate() const;
    double order_service_ms() const { return order_base_ms + order_per_endorsement_ms * double(k); }

    // Three peers whose response latencies track the measured deployment:
    // about 0.5 s for the fastest, 1.1 s for the second, 1.3 s for the third.
    static EndorsementPolicy default_policy(size_t k = 2);
};

// Endorsement latency for a single transaction on an otherwise idle
// network: the k-th fastest peer response. Chosen peer ids are appended to
// `chosen` when provided.
double endorsement_latency_ms(const EndorsementPolicy& policy, util::Drbg& rng,
                              std::vector<std::string>* chosen = nullptr);

struct BenchResult {
    std::string policy_name;
    size_t k = 0;
    double send_rate_tps = 0;
    double throughput_tps = 0;
    double lat_min_ms = 0;
    double lat_avg_ms = 0;
    double lat_max_ms = 0;
    size_t submitted = 0;
    size_t committed = 0;
};

// Discrete-event simulation of the endorsement + ordering pipeline under a
// fixed send rate. Fully deterministic for a given seed.
BenchResult run_bench(const EndorsementPolicy& policy, double send_rate_tps, double duration_s,
                      uint64_t seed);

std::string bench_csv_header();
std::string bench_csv_row(const BenchResult& r);

}  // namespace ledger
