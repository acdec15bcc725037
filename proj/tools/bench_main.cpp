// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: Monte Carlo rounds and the grid-search oracle.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hetnet/analytic.hpp"
#include "hetnet/scenario.hpp"
#include "hetnet/sim.hpp"
#include "hetnet/ssaua.hpp"

namespace {

template <class F>
double seconds(F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    using namespace hetnet;

    const ScenarioFile scenario = default_scenario();
    const NetworkConfig& cfg = scenario.network;
    const double c = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
    const SsauaSolution sol = ssaua_solve(cfg);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif

    {
        const SimConfig sim = SimConfig::validated(10.0, 5.0, 24, 42);
        SimOutcome serial, parallel;
        const double t_serial = seconds(
            [&] { serial = run_monte_carlo_reference(cfg, sim, sol.eta, sol.bias); });
        const double t_parallel =
            seconds([&] { parallel = run_monte_carlo(cfg, sim, sol.eta, sol.bias); });
        const bool identical = serial.mean_rate_bps == parallel.mean_rate_bps &&
                               serial.mean_rate_ci95_bps == parallel.mean_rate_ci95_bps;
        std::printf("monte-carlo %d rounds: serial %.3f s, openmp %.3f s, speedup %.2fx, identical=%s\n",
                    sim.rounds, t_serial, t_parallel, t_serial / t_parallel,
                    identical ? "yes" : "NO");
    }

    {
        GridSearchOptions serial_opts;
        serial_opts.parallel = false;
        GridSearchOptions parallel_opts;
        BaselineSolution a, b;
        const double t_serial =
            seconds([&] { a = grid_search_baseline(cfg, c, 0.01, 1e-3, serial_opts); });
        const double t_parallel =
            seconds([&] { b = grid_search_baseline(cfg, c, 0.01, 1e-3, parallel_opts); });
        const bool identical =
            a.objective_bps == b.objective_bps && a.assoc.a == b.assoc.a;
        std::printf("grid-search step 1e-3: serial %.3f s, openmp %.3f s, speedup %.2fx, identical=%s\n",
                    t_serial, t_parallel, t_serial / t_parallel,
                    identical ? "yes" : "NO");
    }
    return 0;
}
