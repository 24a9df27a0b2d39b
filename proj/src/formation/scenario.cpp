#include "platoon/formation/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace formation {

namespace {

struct RawScenario {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    double num(const std::string& k) const {
        auto it = kv.find(k);
        if (it == kv.end()) throw FormationError("scenario: missing key '" + k + "'");
        try {
            size_t used = 0;
            double v = std::stod(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw FormationError("scenario: bad number for '" + k + "'");
        }
    }
    double num_or(const std::string& k, double fallback) const {
        return has(k) ? num(k) : fallback;
    }
};

const char* kKnownKeys[] = {"R",          "v_chi",          "a_chi",        "v_chi_min",
                            "v_chi_max",  "v_platoon",      "a_platoon",    "v_platoon_max",
                            "v_platoon_min", "Q",            "n",            "strategy",
                            "join_headway",  "a_min",        "a_max",        "t_proof_ms",
                            "t_agg_ms",      "t_keyagg_ms",  "t_net_ms",     "t_verify_ms"};

ScenarioFile build(const RawScenario& raw) {
    for (const auto& [k, v] : raw.kv) {
        bool known = false;
        for (const char* key : kKnownKeys) known = known || k == key;
        if (!known) throw FormationError("scenario: unknown key '" + k + "'");
    }

    ScenarioFile sf;
    FormationScenario& sc = sf.scenario;
    sc.comm_radius_m = raw.num("R");
    sc.companies = static_cast<int>(raw.num("n"));
    sc.join_headway_m = raw.num_or("join_headway", 15.0);

    double a_lo = raw.num_or("a_min", -10.0);
    double a_hi = raw.num_or("a_max", 10.0);

    TruckState chi;
    chi.v = raw.num("v_chi");
    chi.a = raw.num("a_chi");
    chi.v_min = raw.num_or("v_chi_min", 0.0);
    chi.v_max = raw.num("v_chi_max");
    chi.a_min = a_lo;
    chi.a_max = a_hi;
    chi.position = -sc.comm_radius_m;
    sc.standalone = chi;

    double v_p = raw.num("v_platoon");
    double v_p_max = raw.num_or("v_platoon_max", v_p);
    // Symmetric speed envelope by default: the platoon can give up as much
    // speed as the standalone truck can gain over it.
    double v_p_min = raw.num_or("v_platoon_min", std::max(0.0, 2 * v_p - chi.v_max));
    sf.platoon_decel = raw.num_or("a_platoon", -1.0);
    if (sf.platoon_decel < a_lo || sf.platoon_decel > a_hi)
        throw FormationError("scenario: a_platoon outside the acceleration bounds");

    int q = static_cast<int>(raw.num_or("Q", 3));
    if (q < 1) throw FormationError("scenario: platoon size must be >= 1");
    for (int i = 0; i < q; ++i) {
        TruckState m;
        m.v = v_p;
        m.a = 0;  // the platoon cruises while the newcomer authenticates
        m.v_min = v_p_min;
        m.v_max = v_p_max;
        m.a_min = a_lo;
        m.a_max = a_hi;
        m.position = -20.0 * i;
        sc.platoon.members.push_back(m);
    }

    LatencyModel def;
    sc.latency.t_proof_ms = raw.num_or("t_proof_ms", def.t_proof_ms);
    sc.latency.t_agg_ms = raw.num_or("t_agg_ms", def.t_agg_ms);
    sc.latency.t_keyagg_ms = raw.num_or("t_keyagg_ms", def.t_keyagg_ms);
    sc.latency.t_net_ms = raw.num_or("t_net_ms", def.t_net_ms);
    sc.latency.t_verify_ms = raw.num_or("t_verify_ms", def.t_verify_ms);

    auto it = raw.kv.find("strategy");
    sf.strategy = it == raw.kv.end() ? Strategy::SecondCatchup : strategy_from_string(it->second);

    sc.validate();
    return sf;
}

}  // namespace

ScenarioFile parse_scenario(std::istream& in) {
    RawScenario raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormationError("scenario: expected key=value at line " + std::to_string(lineno));
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw FormationError("scenario: empty key or value at line " + std::to_string(lineno));
        if (!raw.kv.emplace(key, val).second)
            throw FormationError("scenario: duplicate key '" + key + "'");
    }
    return build(raw);
}

ScenarioFile parse_scenario_text(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw FormationError("scenario: cannot open '" + path + "'");
    return parse_scenario(in);
}

ScenarioFile default_scenario() {
    return parse_scenario_text(
        "R=300\n"
        "v_chi=17\n"
        "a_chi=1\n"
        "v_chi_max=28\n"
        "v_platoon=22\n"
        "a_platoon=-1\n"
        "Q=3\n"
        "n=2\n"
        "strategy=2nd-catchup\n");
}

std::string scenario_to_text(const ScenarioFile& sf) {
    const FormationScenario& sc = sf.scenario;
    std::ostringstream os;
    os << "R=" << sc.comm_radius_m << "\n";
    os << "v_chi=" << sc.standalone.v << "\n";
    os << "a_chi=" << sc.standalone.a << "\n";
    os << "v_chi_min=" << sc.standalone.v_min << "\n";
    os << "v_chi_max=" << sc.standalone.v_max << "\n";
    os << "v_platoon=" << sc.platoon.leader().v << "\n";
    os << "a_platoon=" << sf.platoon_decel << "\n";
    os << "v_platoon_max=" << sc.platoon.leader().v_max << "\n";
    os << "v_platoon_min=" << sc.platoon.leader().v_min << "\n";
    os << "Q=" << sc.platoon.size() << "\n";
    os << "n=" << sc.companies << "\n";
    os << "strategy=" << to_string(sf.strategy) << "\n";
    os << "join_headway=" << sc.join_headway_m << "\n";
    os << "t_proof_ms=" << sc.latency.t_proof_ms << "\n";
    os << "t_agg_ms=" << sc.latency.t_agg_ms << "\n";
    os << "t_keyagg_ms=" << sc.latency.t_keyagg_ms << "\n";
    os << "t_net_ms=" << sc.latency.t_net_ms << "\n";
    os << "t_verify_ms=" << sc.latency.t_verify_ms << "\n";
    return os.str();
}

}  // namespace formation
