#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace formation {

struct FormationError : std::runtime_error {
    explicit FormationError(const std::string& what) : std::runtime_error(what) {}
};

// Longitudinal state of one truck. Speeds and accelerations live in a box;
// every displacement computation honours the speed caps piecewise.
struct TruckState {
    double position = 0;  // m
    double v = 0;         // m/s
    double a = 0;         // m/s^2
    double v_min = 0, v_max = 0;
    double a_min = 0, a_max = 0;
    void validate() const;
};

// Ordered members, front() is the leader, back() the tail.
struct PlatoonState {
    std::vector<TruckState> members;
    size_t size() const { return members.size(); }
    const TruckState& leader() const { return members.front(); }
    const TruckState& tail() const { return members.back(); }
    void validate() const;
};

// Per-stage latency model of the authentication pipeline (milliseconds).
struct LatencyModel {
    double t_proof_ms = 255;
    double t_agg_ms = 2;
    double t_keyagg_ms = 0.4;
    double t_net_ms = 1100;
    double t_verify_ms = 512;
};

enum class Strategy { SecondCatchup, SlowDown, Hybrid };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct FormationScenario {
    PlatoonState platoon;
    TruckState standalone;
    double comm_radius_m = 300;
    int companies = 2;
    LatencyModel latency;
    double join_headway_m = 15;  // terminal headway rendered in the trace
    void validate() const;
};

struct FormationTimeline {
    double gamma_s = 0;
    double theta_s = 0;
    double total_s = 0;
    Strategy strategy = Strategy::SecondCatchup;
    double gap_after_catchup_m = 0;
};

// Cap-aware displacement over dt: quadratic until a speed bound is hit,
// linear after.
double displacement(const TruckState& s, double dt);
double speed_after(const TruckState& s, double dt);

// Relative-position update from two per-truck displacements.
double relative_position(double p_ij, double d_i, double d_j);

// Leader gap remaining after the catch-up interval gamma.
double catchup_gap(const FormationScenario& sc, double gamma_s);

// End-to-end authentication time: n proof generations plus the aggregation,
// network, and verification stages.
double auth_time_s(int companies, const LatencyModel& lat);

// Cooperative-driving time under the chosen strategy. Throws
// FormationError when the closing speed is not strictly positive.
double theta(const FormationScenario& sc, double gamma_s, Strategy strategy);

FormationTimeline total_time(const FormationScenario& sc, Strategy strategy);

// One row of a company-count sweep. The cooperative-driving phase is a
// property of the kinematic scenario (evaluated at its configured
// authentication time); the sweep varies the proof-generation count, which
// enters through gamma alone.
struct SweepRow {
    int n;
    double gamma_s, theta_s, total_s;
};

std::vector<SweepRow> sweep_companies(const FormationScenario& sc, Strategy strategy, int n_from,
                                      int n_to);

struct TraceRow {
    double t_s;
    double chi_pos_m;
    double gap_m;
    double chi_speed;
    double platoon_speed;
    int phase;  // 1 = catch-up, 2 = cooperative driving
};

struct SimResult {
    FormationTimeline timeline;
    std::vector<TraceRow> trace;
};

// Time-step integrator over both phases; the ground-truth oracle for the
// closed forms. dt in (0, 0.1]. Throws FormationError("did not converge")
// past the horizon bound (10x the closed-form total when available).
SimResult simulate(const FormationScenario& sc, Strategy strategy, double dt_s);

}  // namespace formation
