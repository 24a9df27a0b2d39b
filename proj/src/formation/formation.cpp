#include "platoon/formation/formation.hpp"

#include <algorithm>
#include <cmath>

namespace formation {

void TruckState::validate() const {
    if (!(0 <= v_min && v_min <= v && v <= v_max))
        throw FormationError("truck speed outside [v_min, v_max]");
    if (!(a_min <= a && a <= a_max)) throw FormationError("truck acceleration outside bounds");
}

void PlatoonState::validate() const {
    if (members.empty()) throw FormationError("empty platoon");
    for (const auto& m : members) m.validate();
    for (size_t i = 1; i < members.size(); ++i) {
        if (!(members[i].position < members[i - 1].position))
            throw FormationError("platoon positions must strictly decrease from leader to tail");
    }
}

void FormationScenario::validate() const {
    platoon.validate();
    standalone.validate();
    if (comm_radius_m <= 0) throw FormationError("communication radius must be positive");
    if (companies < 1) throw FormationError("at least one company required");
    if (join_headway_m < 0) throw FormationError("negative join headway");
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::SecondCatchup: return "2nd-catchup";
        case Strategy::SlowDown: return "slow-down";
        case Strategy::Hybrid: return "hybrid";
    }
    return "?";
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "2nd-catchup") return Strategy::SecondCatchup;
    if (s == "slow-down") return Strategy::SlowDown;
    if (s == "hybrid") return Strategy::Hybrid;
    throw FormationError("unknown strategy '" + s + "'");
}

double displacement(const TruckState& s, double dt) {
    if (dt < 0) throw FormationError("negative duration");
    if (dt == 0 || (s.a == 0)) return s.v * dt;
    double bound = s.a > 0 ? s.v_max : s.v_min;
    double t_hit = (bound - s.v) / s.a;  // >= 0 by the state invariant
    if (t_hit >= dt) return s.v * dt + 0.5 * s.a * dt * dt;
    return s.v * t_hit + 0.5 * s.a * t_hit * t_hit + bound * (dt - t_hit);
}

double speed_after(const TruckState& s, double dt) {
    return std::clamp(s.v + s.a * dt, s.v_min, s.v_max);
}

double relative_position(double p_ij, double d_i, double d_j) { return p_ij + (d_i - d_j); }

double catchup_gap(const FormationScenario& sc, double gamma_s) {
    if (gamma_s < 0) throw FormationError("negative catch-up time");
    double d_lead = displacement(sc.platoon.leader(), gamma_s);
    double d_chi = displacement(sc.standalone, gamma_s);
    return sc.comm_radius_m - (d_lead - d_chi);
}

double auth_time_s(int companies, const LatencyModel& lat) {
    if (companies < 1) throw FormationError("at least one company required");
    double ms = companies * lat.t_proof_ms + lat.t_agg_ms + lat.t_keyagg_ms + lat.t_net_ms +
                lat.t_verify_ms;
    return ms / 1000.0;
}

namespace {

// Post-authentication closing speed between the standalone truck (at its
// cap) and the strategy's reference platoon member.
double closing_speed(const FormationScenario& sc, double gamma_s, Strategy strategy,
                     const TruckState& ref) {
    switch (strategy) {
        case Strategy::SecondCatchup:
        case Strategy::SlowDown:
            return sc.standalone.v_max - speed_after(ref, gamma_s);
        case Strategy::Hybrid:
            return sc.standalone.v_max - ref.v_min;
    }
    return 0;
}

const TruckState& reference_member(const FormationScenario& sc, Strategy strategy) {
    return strategy == Strategy::SecondCatchup ? sc.platoon.leader() : sc.platoon.tail();
}

}  // namespace

double theta(const FormationScenario& sc, double gamma_s, Strategy strategy) {
    sc.validate();
    const TruckState& ref = reference_member(sc, strategy);
    double gap = sc.comm_radius_m -
                 (displacement(ref, gamma_s) - displacement(sc.standalone, gamma_s));
    double rate = closing_speed(sc, gamma_s, strategy, ref);
    if (rate <= 0)
        throw FormationError("unreachable platoon: closing speed " + std::to_string(rate) +
                             " m/s under " + to_string(strategy));
    return std::max(0.0, gap) / rate;
}

FormationTimeline total_time(const FormationScenario& sc, Strategy strategy) {
    FormationTimeline t;
    t.strategy = strategy;
    t.gamma_s = auth_time_s(sc.companies, sc.latency);
    t.theta_s = theta(sc, t.gamma_s, strategy);
    t.total_s = t.gamma_s + t.theta_s;
    t.gap_after_catchup_m = catchup_gap(sc, t.gamma_s);
    return t;
}

std::vector<SweepRow> sweep_companies(const FormationScenario& sc, Strategy strategy, int n_from,
                                      int n_to) {
    if (n_from < 1 || n_to < n_from) throw FormationError("bad company range");
    double theta_ref = theta(sc, auth_time_s(sc.companies, sc.latency), strategy);
    std::vector<SweepRow> rows;
    for (int n = n_from; n <= n_to; ++n) {
        double gamma = auth_time_s(n, sc.latency);
        rows.push_back(SweepRow{n, gamma, theta_ref, gamma + theta_ref});
    }
    return rows;
}

SimResult simulate(const FormationScenario& sc, Strategy strategy, double dt_s) {
    if (!(dt_s > 0 && dt_s <= 0.1)) throw FormationError("dt must be in (0, 0.1]");
    sc.validate();

    double gamma = auth_time_s(sc.companies, sc.latency);
    double horizon;
    try {
        horizon = 10.0 * total_time(sc, strategy).total_s;
    } catch (const FormationError&) {
        // Closed form undefined; fall back to a generous bound so the
        // integrator itself reports the divergence.
        horizon = gamma + 1000.0;
    }

    SimResult res;
    res.timeline.strategy = strategy;
    res.timeline.gamma_s = gamma;

    size_t q = sc.platoon.size();
    std::vector<double> gap(q, sc.comm_radius_m);
    std::vector<TruckState> members = sc.platoon.members;
    TruckState chi = sc.standalone;
    double chi_pos = 0;
    double t = 0;

    size_t ref_idx = strategy == Strategy::SecondCatchup ? 0 : q - 1;
    const int sample_stride = std::max(1, static_cast<int>(std::lround(0.1 / dt_s)));
    int step_count = 0;
    auto sample = [&](int phase) {
        res.trace.push_back(
            TraceRow{t, chi_pos, gap[ref_idx], chi.v, members[ref_idx].v, phase});
    };
    sample(1);

    // Phase 1: both parties under their stated kinematics for the duration
    // of the authentication.
    while (t < gamma) {
        double h = std::min(dt_s, gamma - t);
        double d_chi = displacement(chi, h);
        chi.v = speed_after(chi, h);
        chi_pos += d_chi;
        for (size_t i = 0; i < q; ++i) {
            double d_i = displacement(members[i], h);
            members[i].v = speed_after(members[i], h);
            gap[i] -= d_i - d_chi;
        }
        t += h;
        if (++step_count % sample_stride == 0) sample(1);
    }

    res.timeline.gap_after_catchup_m = gap[0];

    // Phase 2: the strategy's closing speeds are established; the gaps
    // close linearly until every pair has reached the join point.
    std::vector<double> rate(q);
    for (size_t i = 0; i < q; ++i) {
        if (strategy == Strategy::Hybrid) {
            members[i].v = members[i].v_min;
        }
        members[i].a = 0;
        rate[i] = sc.standalone.v_max - members[i].v;
    }
    chi.v = chi.v_max;
    chi.a = 0;

    double theta_elapsed = 0;
    double theta_done = 0;  // max over members of interpolated closing time
    size_t open = 0;
    for (size_t i = 0; i < q; ++i)
        if (gap[i] > 0) ++open;
        else theta_done = std::max(theta_done, 0.0);

    while (open > 0) {
        if (theta_elapsed > horizon)
            throw FormationError("did not converge within the horizon bound");
        for (size_t i = 0; i < q; ++i) {
            if (gap[i] <= 0) continue;
            double before = gap[i];
            gap[i] -= rate[i] * dt_s;
            if (gap[i] <= 0 && rate[i] > 0) {
                // Sub-step crossing time keeps the measurement dt-stable.
                theta_done = std::max(theta_done, theta_elapsed + before / rate[i]);
                --open;
            }
        }
        chi_pos += chi.v_max * dt_s;
        theta_elapsed += dt_s;
        t += dt_s;
        if (++step_count % sample_stride == 0) sample(2);
    }

    res.timeline.theta_s = theta_done;
    res.timeline.total_s = gamma + theta_done;
    sample(2);
    return res;
}

}  // namespace formation
