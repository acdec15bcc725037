#include "hetnet/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hetnet {

using nlohmann::json;

SweepAxis sweep_axis_from_string(const std::string& name) {
    if (name == "mu") return SweepAxis::mu;
    if (name == "gamma") return SweepAxis::gamma;
    if (name == "K" || name == "k") return SweepAxis::tier_count;
    throw ConfigError("unknown sweep axis '" + name + "' (expected mu, gamma, or K)");
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::mu: return "mu";
        case SweepAxis::gamma: return "gamma";
        case SweepAxis::tier_count: return "K";
    }
    return "?";
}

ScenarioFile default_scenario() {
    ScenarioFile s;
    s.network = NetworkConfig::validated(
        {
            TierConfig{1.0, 56.0, 0.20, 0.35},
            TierConfig{5.0, 46.0, 0.25, 0.40},
            TierConfig{10.0, 36.0, 0.30, 0.45},
        },
        100.0, 4.0, 2.0e8, 0.2);
    s.sim = SimConfig::validated(10.0, 5.0, 100, 1, false);
    return s;
}

namespace {

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError(std::string("scenario field '") + key + "' must be a number");
    return obj[key].get<double>();
}

}  // namespace

ScenarioFile parse_scenario(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("scenario root must be a JSON object");

    const ScenarioFile defaults = default_scenario();
    ScenarioFile out;

    const json network = root.value("network", json::object());
    std::vector<TierConfig> tiers;
    if (network.contains("tiers")) {
        if (!network["tiers"].is_array() || network["tiers"].empty())
            throw ConfigError("network.tiers must be a non-empty array");
        for (const json& t : network["tiers"]) {
            TierConfig tier;
            if (!t.contains("lambda_per_km2"))
                throw ConfigError("every tier needs lambda_per_km2");
            tier.lambda_per_km2 = get_number(t, "lambda_per_km2", 0.0);
            tier.power_dbm = get_number(t, "power_dbm", 40.0);
            tier.eta_min = get_number(t, "eta_min", 1e-6);
            tier.eta_max = get_number(t, "eta_max", 1.0);
            tiers.push_back(tier);
        }
    } else {
        tiers = defaults.network.tiers;
    }
    out.network = NetworkConfig::validated(
        std::move(tiers),
        get_number(network, "ue_density_per_km2", defaults.network.ue_density_per_km2),
        get_number(network, "gamma", defaults.network.pathloss_exponent),
        get_number(network, "bandwidth_hz", defaults.network.bandwidth_hz),
        get_number(network, "sir_threshold", defaults.network.sir_threshold));

    const json sim = root.value("sim", json::object());
    out.sim = SimConfig::validated(
        get_number(sim, "region_km", defaults.sim.region_km),
        get_number(sim, "sample_km", defaults.sim.sample_km),
        static_cast<int>(get_number(sim, "rounds", defaults.sim.rounds)),
        static_cast<std::uint64_t>(get_number(sim, "seed", 1.0)),
        sim.value("torus", false));

    if (root.contains("sweep")) {
        const json& sw = root["sweep"];
        if (!sw.is_object() || !sw.contains("variable") || !sw.contains("values"))
            throw ConfigError("sweep block needs 'variable' and 'values'");
        SweepSpec spec;
        spec.axis = sweep_axis_from_string(sw["variable"].get<std::string>());
        for (const json& v : sw["values"]) {
            if (!v.is_number()) throw ConfigError("sweep values must be numbers");
            spec.values.push_back(v.get<double>());
        }
        if (spec.values.empty()) throw ConfigError("sweep values must be non-empty");
        // every sweep value must yield a valid config
        out.sweep = spec;
        for (double v : spec.values) configure_sweep_point(out, spec.axis, v);
    }
    return out;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioFile& scenario) {
    json tiers = json::array();
    for (const TierConfig& t : scenario.network.tiers)
        tiers.push_back(json{{"lambda_per_km2", t.lambda_per_km2},
                             {"power_dbm", t.power_dbm},
                             {"eta_min", t.eta_min},
                             {"eta_max", t.eta_max}});
    json root{
        {"network",
         {{"tiers", tiers},
          {"ue_density_per_km2", scenario.network.ue_density_per_km2},
          {"gamma", scenario.network.pathloss_exponent},
          {"bandwidth_hz", scenario.network.bandwidth_hz},
          {"sir_threshold", scenario.network.sir_threshold}}},
        {"sim",
         {{"region_km", scenario.sim.region_km},
          {"sample_km", scenario.sim.sample_km},
          {"rounds", scenario.sim.rounds},
          {"seed", scenario.sim.seed},
          {"torus", scenario.sim.torus}}},
    };
    if (scenario.sweep) {
        root["sweep"] = json{{"variable", to_string(scenario.sweep->axis)},
                             {"values", scenario.sweep->values}};
    }
    return root.dump(2) + "\n";
}

NetworkConfig configure_sweep_point(const ScenarioFile& scenario, SweepAxis axis,
                                    double value) {
    const NetworkConfig& base = scenario.network;
    switch (axis) {
        case SweepAxis::mu:
            return NetworkConfig::validated(base.tiers, value, base.pathloss_exponent,
                                            base.bandwidth_hz, base.sir_threshold);
        case SweepAxis::gamma:
            return NetworkConfig::validated(base.tiers, base.ue_density_per_km2, value,
                                            base.bandwidth_hz, base.sir_threshold);
        case SweepAxis::tier_count: {
            const int k = static_cast<int>(value);
            if (k < 2 || k > base.num_tiers() || static_cast<double>(k) != value)
                throw ConfigError("K sweep value must be an integer in [2, number of tiers]");
            std::vector<TierConfig> tiers(base.tiers.begin(), base.tiers.begin() + k);
            return NetworkConfig::validated(std::move(tiers), base.ue_density_per_km2,
                                            base.pathloss_exponent, base.bandwidth_hz,
                                            base.sir_threshold);
        }
    }
    throw ConfigError("unknown sweep axis");
}

}  // namespace hetnet
