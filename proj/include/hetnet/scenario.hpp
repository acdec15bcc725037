#pragma once

// Scenario files: a single JSON format holding the network parameters, the
// simulation protocol, and an optional sweep descriptor. Missing fields fall
// back to the built-in default scenario.

#include <optional>
#include <string>
#include <vector>

#include "hetnet/sim.hpp"
#include "hetnet/types.hpp"

namespace hetnet {

enum class SweepAxis { mu, gamma, tier_count };

SweepAxis sweep_axis_from_string(const std::string& name);  // "mu"|"gamma"|"K"
const char* to_string(SweepAxis axis);

struct SweepSpec {
    SweepAxis axis = SweepAxis::mu;
    std::vector<double> values;
};

struct ScenarioFile {
    NetworkConfig network;
    SimConfig sim;
    std::optional<SweepSpec> sweep;
};

/// Three-tier reference scenario: lambda = (1, 5, 10)/km^2, P = (56, 46, 36)
/// dBm, eta boxes (0.2..0.35, 0.25..0.4, 0.3..0.45), mu = 100/km^2, gamma = 4,
/// W = 200 MHz, T = 0.2; 10 km generation square sampled in the central
/// 5 km square over 100 rounds.
ScenarioFile default_scenario();

ScenarioFile parse_scenario(const std::string& json_text);
ScenarioFile load_scenario(const std::string& path);
std::string serialize_scenario(const ScenarioFile& scenario);

/// The network at one sweep point: mu/gamma replace the scalar, K truncates
/// the tier list to its first `value` tiers. Re-validates, so an infeasible
/// point throws ConfigError.
NetworkConfig configure_sweep_point(const ScenarioFile& scenario, SweepAxis axis,
                                    double value);

}  // namespace hetnet
