#pragma once

// Command implementations behind the hetnet CLI. Kept in the library so the
// test suites can drive them directly; tools/hetnet_main.cpp only parses argv.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hetnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericError = 3;
inline constexpr int kExitValidationFailure = 4;

struct SolveArgs {
    std::string scenario_path;  // empty -> built-in default scenario
};

struct SimulateArgs {
    std::string scenario_path;
    std::string policy = "ssaua";  // ssaua | maxpower | custom
    std::optional<int> rounds;
    std::optional<std::uint64_t> seed;
    bool torus = false;
    std::string out_path;           // CSV destination; empty -> stdout
    std::string dump_samples_path;  // optional per-UE sample CSV
    std::vector<double> custom_bias;
    std::vector<double> custom_eta;
};

struct SweepArgs {
    std::string scenario_path;
    std::string axis;             // empty -> scenario's sweep block (default: mu)
    std::vector<double> values;   // empty -> scenario's sweep block or built-ins
    bool with_oracle = false;
    bool no_sim = false;
    std::optional<int> rounds;
    std::optional<std::uint64_t> seed;
    std::string out_path;
};

struct ValidateArgs {
    int k_min = 2;
    int k_max = 4;
    int instances = 10;
    std::uint64_t seed = 1;
    double a_step = 1e-3;          // correctness oracle grid for K <= 3
    double scaling_a_step = 0.05;  // timing oracle grid, shared across K
    std::string out_path;
};

struct ValidationInstance {
    int tiers = 0;
    int index = 0;
    std::string scenario;  // sparse | dense
    double f_ssaua = 0.0;
    double f_oracle = 0.0;
    double f_prime = 0.0;
    double rel_diff = 0.0;
    double bound = 0.0;
    double kkt_residual = 0.0;
    bool ok = false;
    std::string config_json;  // serialized instance for replay on failure
};

struct ValidationTiming {
    int tiers = 0;
    double ssaua_seconds = 0.0;
    double oracle_seconds = 0.0;
};

struct ValidationReport {
    std::vector<ValidationInstance> instances;
    std::vector<ValidationTiming> timing;
    bool checks_ok = false;
    bool timing_ratio_monotone = false;
};

/// SSAUA vs grid oracle on random instances plus the run-time scaling exhibit.
ValidationReport run_validation(const ValidateArgs& args);

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err);

}  // namespace hetnet
