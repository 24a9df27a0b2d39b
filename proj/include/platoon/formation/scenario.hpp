#pragma once

#include <iosfwd>

#include "platoon/formation/formation.hpp"

namespace formation {

// A parsed scenario file: the kinematic setup plus the requested strategy
// and the nominal strategy deceleration (recorded, bounds-checked, and
// surfaced in reports; the cooperative-driving model works with the speed
// envelope it implies).
struct ScenarioFile {
    FormationScenario scenario;
    Strategy strategy = Strategy::SecondCatchup;
    double platoon_decel = -1.0;
};

// Key/value text: `R=300`, `v_chi=17`, ... `#` starts a comment. Unknown
// keys are errors.
ScenarioFile parse_scenario(std::istream& in);
ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile load_scenario(const std::string& path);

// The scenario used throughout the reports: 300 m radius, a 17 m/s truck
// accelerating at 1 m/s^2 toward 28 m/s, a 22 m/s platoon, and measured
// pipeline latencies.
ScenarioFile default_scenario();

std::string scenario_to_text(const ScenarioFile& sf);

}  // namespace formation
