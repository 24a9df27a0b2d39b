#include "platoon/ledger/bench.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ledger {

void EndorsementPolicy::validate() const {
    if (endorsers.empty()) throw std::invalid_argument("endorsement policy: no endorsers");
    if (k < 1 || k > endorsers.size())
        throw std::invalid_argument("endorsement policy: k outside [1, endorser count]");
    if (jitter_frac < 0 || jitter_frac >= 1)
        throw std::invalid_argument("endorsement policy: bad jitter fraction");
}

EndorsementPolicy EndorsementPolicy::default_policy(size_t k) {
    EndorsementPolicy p;
    p.k = k;
    p.endorsers = {{"peer1", 440, 10}, {"peer2", 1090, 10}, {"peer3", 1240, 10}};
    return p;
}

namespace {

double jittered(double value, double frac, util::Drbg& rng) {
    return value * rng.uniform_real(1.0 - frac, 1.0 + frac);
}

}  // namespace

double endorsement_latency_ms(const EndorsementPolicy& policy, util::Drbg& rng,
                              std::vector<std::string>* chosen) {
    policy.validate();
    std::vector<std::pair<double, const EndorserModel*>> responses;
    for (const auto& e : policy.endorsers) {
        double resp = jittered(e.delay_ms, policy.jitter_frac, rng) +
                      jittered(e.service_ms, policy.jitter_frac, rng);
        responses.push_back({resp, &e});
    }
    std::sort(responses.begin(), responses.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (chosen) {
        for (size_t i = 0; i < policy.k; ++i) chosen->push_back(responses[i].second->id);
    }
    return responses[policy.k - 1].first;
}

BenchResult run_bench(const EndorsementPolicy& policy, double send_rate_tps, double duration_s,
                      uint64_t seed) {
    policy.validate();
    if (send_rate_tps <= 0 || duration_s <= 0)
        throw std::invalid_argument("run_bench: rate and duration must be positive");
    util::Drbg rng = util::Drbg(seed).child("ledger-bench");

    const double horizon_ms = duration_s * 1000.0;
    const double spacing_ms = 1000.0 / send_rate_tps;

    // The k fastest peers by nominal delay take every endorsement job.
    std::vector<size_t> order(policy.endorsers.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return policy.endorsers[a].delay_ms < policy.endorsers[b].delay_ms;
    });
    order.resize(policy.k);

    std::vector<double> endorser_free(policy.endorsers.size(), 0.0);
    double ordering_free = 0.0;

    BenchResult res;
    res.k = policy.k;
    res.send_rate_tps = send_rate_tps;
    res.policy_name = std::to_string(policy.k) + "-of-any";
    res.lat_min_ms = 0;
    res.lat_max_ms = 0;

    double lat_sum = 0;
    for (double arrival = 0; arrival < horizon_ms; arrival += spacing_ms) {
        ++res.submitted;
        double endorse_done = 0;
        for (size_t idx : order) {
            const EndorserModel& peer = policy.endorsers[idx];
            double start = std::max(arrival, endorser_free[idx]);
            double service = jittered(peer.service_ms, policy.jitter_frac, rng);
            endorser_free[idx] = start + service;
            double done = start + service + jittered(peer.delay_ms, policy.jitter_frac, rng);
            endorse_done = std::max(endorse_done, done);
        }
        double o_start = std::max(endorse_done, ordering_free);
        double commit = o_start + jittered(policy.order_service_ms(), policy.jitter_frac, rng);
        ordering_free = commit;
        if (commit > horizon_ms) continue;  // still in flight at window end
        double latency = commit - arrival;
        ++res.committed;
        lat_sum += latency;
        res.lat_min_ms = res.committed == 1 ? latency : std::min(res.lat_min_ms, latency);
        res.lat_max_ms = std::max(res.lat_max_ms, latency);
    }
    res.lat_avg_ms = res.committed ? lat_sum / double(res.committed) : 0;
    res.throughput_tps = double(res.committed) / duration_s;
    return res;
}

std::string bench_csv_header() {
    return "policy,k,send_rate,throughput_tps,lat_min_ms,lat_avg_ms,lat_max_ms";
}

std::string bench_csv_row(const BenchResult& r) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << r.policy_name << ',' << r.k << ',' << r.send_rate_tps << ','
       << r.throughput_tps << ',' << r.lat_min_ms << ',' << r.lat_avg_ms << ',' << r.lat_max_ms;
    return os.str();
}

}  // namespace ledger
