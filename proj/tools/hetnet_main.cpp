// hetnet: solve | simulate | sweep | validate for the K-tier downlink toolkit.

#include <cstdlib>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "hetnet/cli.hpp"

namespace {

void apply_thread_override() {
#ifdef _OPENMP
    if (const char* env = std::getenv("HETNET_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_override();

    CLI::App app{"K-tier heterogeneous network spectrum/association toolkit"};
    app.require_subcommand(1);

    hetnet::SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand(
        "solve", "Classify the scenario and print the structured solution and prices");
    solve->add_option("scenario", solve_args.scenario_path,
                      "Scenario JSON (omit for the built-in default)");

    hetnet::SimulateArgs sim_args;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo run under a policy; CSV per round");
    simulate->add_option("scenario", sim_args.scenario_path, "Scenario JSON");
    simulate->add_option("--policy", sim_args.policy, "ssaua | maxpower | custom");
    int sim_rounds = -1;
    simulate->add_option("--rounds", sim_rounds, "Override round count");
    std::int64_t sim_seed = -1;
    simulate->add_option("--seed", sim_seed, "Override RNG seed");
    simulate->add_flag("--torus", sim_args.torus, "Wrap-around distances");
    simulate->add_option("--out", sim_args.out_path, "CSV output path (default stdout)");
    simulate->add_option("--dump-samples", sim_args.dump_samples_path,
                         "Per-UE sample CSV for distribution checks");
    simulate->add_option("--bias", sim_args.custom_bias,
                         "Custom policy bias values (one per tier)");
    simulate->add_option("--eta", sim_args.custom_eta,
                         "Custom policy spectrum fractions (one per tier)");

    hetnet::SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Analytic + simulated report rows along mu, gamma, or K");
    sweep->add_option("scenario", sweep_args.scenario_path, "Scenario JSON");
    sweep->add_option("--axis", sweep_args.axis, "mu | gamma | K");
    sweep->add_option("--values", sweep_args.values, "Axis values (default per axis)");
    sweep->add_flag("--with-oracle", sweep_args.with_oracle,
                    "Add grid-search optimum columns (K <= 3)");
    sweep->add_flag("--no-sim", sweep_args.no_sim, "Skip Monte Carlo columns");
    int sweep_rounds = -1;
    sweep->add_option("--rounds", sweep_rounds, "Override round count");
    std::int64_t sweep_seed = -1;
    sweep->add_option("--seed", sweep_seed, "Override RNG seed");
    sweep->add_option("--out", sweep_args.out_path, "CSV output path (default stdout)");

    hetnet::ValidateArgs val_args;
    CLI::App* validate = app.add_subcommand(
        "validate", "SSAUA vs grid oracle on random instances + run-time scaling");
    validate->add_option("--k-min", val_args.k_min, "Smallest tier count");
    validate->add_option("--k-max", val_args.k_max, "Largest tier count");
    validate->add_option("--instances", val_args.instances, "Instances per K");
    validate->add_option("--seed", val_args.seed, "Instance generator seed");
    validate->add_option("--a-step", val_args.a_step, "Correctness grid step (K <= 3)");
    validate->add_option("--scaling-a-step", val_args.scaling_a_step,
                         "Timing grid step shared across K");
    validate->add_option("--out", val_args.out_path, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return hetnet::cmd_solve(solve_args, std::cout, std::cerr);
    if (simulate->parsed()) {
        if (sim_rounds > 0) sim_args.rounds = sim_rounds;
        if (sim_seed >= 0) sim_args.seed = static_cast<std::uint64_t>(sim_seed);
        return hetnet::cmd_simulate(sim_args, std::cout, std::cerr);
    }
    if (sweep->parsed()) {
        if (sweep_rounds > 0) sweep_args.rounds = sweep_rounds;
        if (sweep_seed >= 0) sweep_args.seed = static_cast<std::uint64_t>(sweep_seed);
        return hetnet::cmd_sweep(sweep_args, std::cout, std::cerr);
    }
    if (validate->parsed()) return hetnet::cmd_validate(val_args, std::cout, std::cerr);
    return hetnet::kExitConfigError;
}
