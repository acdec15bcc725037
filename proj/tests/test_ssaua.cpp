#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "hetnet/analytic.hpp"
#include "hetnet/instances.hpp"
#include "hetnet/rng.hpp"
#include "hetnet/ssaua.hpp"
#include "support/oracles.hpp"

using namespace hetnet;

namespace {

NetworkConfig reference_config(double mu) {
    return NetworkConfig::validated(
        {
            TierConfig{1.0, 56.0, 0.20, 0.35},
            TierConfig{5.0, 46.0, 0.25, 0.40},
            TierConfig{10.0, 36.0, 0.30, 0.45},
        },
        mu, 4.0, 2.0e8, 0.2);
}

}  // namespace

TEST_CASE("scenario classification at the reference parameters") {
    const double c = constant_c(4.0, 0.2);

    const ScenarioClass sparse = classify_scenario(reference_config(100.0), c);
    CHECK(sparse.tag == UeScenario::sparse);
    CHECK(sparse.threshold_sum == doctest::Approx(1.47539894243).epsilon(1e-9));

    const ScenarioClass dense = classify_scenario(reference_config(500.0), c);
    CHECK(dense.tag == UeScenario::dense);
    CHECK(dense.a_thresholds[0] == doctest::Approx(0.103123292052).epsilon(1e-9));
    CHECK(dense.a_thresholds[1] == doctest::Approx(0.230590691091).epsilon(1e-9));
    CHECK(dense.a_thresholds[2] == doctest::Approx(0.326104482699).epsilon(1e-9));

    SUBCASE("extreme densities") {
        CHECK(classify_scenario(reference_config(1e9), c).tag == UeScenario::dense);
        CHECK(classify_scenario(reference_config(1e-6), c).tag == UeScenario::sparse);
    }

    SUBCASE("boundary density lands on the boundary branch") {
        const double mu_star = boundary_ue_density(reference_config(100.0), c);
        CHECK(classify_scenario(reference_config(mu_star), c).tag == UeScenario::boundary);
    }
}

TEST_CASE("boundary density equals the closed form to 1e-6 relative") {
    const double c = constant_c(4.0, 0.2);
    const NetworkConfig cfg = reference_config(100.0);
    const double mu_star = boundary_ue_density(cfg, c);
    const double closed = std::pow(1.0 + std::sqrt(5.0) + std::sqrt(10.0), 2) / c;
    CHECK(std::abs(mu_star - closed) / closed < 1e-6);
    CHECK(mu_star == doctest::Approx(217.680203933).epsilon(1e-6));
    CHECK(mu_star > 100.0);
    CHECK(mu_star < 500.0);
}

TEST_CASE("priority-ordering spectrum recurrence") {
    SUBCASE("reference boxes give (0.20, 0.35, 0.45) exactly") {
        const SpectrumAlloc eta = eta_priority_order(reference_config(100.0));
        CHECK(eta[0] == doctest::Approx(0.20).epsilon(1e-12));
        CHECK(eta[1] == doctest::Approx(0.35).epsilon(1e-12));
        CHECK(eta[2] == doctest::Approx(0.45).epsilon(1e-12));
    }

    SUBCASE("no effective constraints: everything to the densest tier") {
        const NetworkConfig cfg = NetworkConfig::validated(
            {TierConfig{1.0, 50.0, 1e-9, 1.0}, TierConfig{2.0, 45.0, 1e-9, 1.0},
             TierConfig{4.0, 40.0, 1e-9, 1.0}},
            100.0, 4.0, 2e8, 0.2);
        const SpectrumAlloc eta = eta_priority_order(cfg);
        CHECK(eta[2] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(eta[0] < 1e-6);
        CHECK(eta[1] < 1e-6);
    }

    SUBCASE("two tiers with symmetric boxes") {
        const NetworkConfig cfg = NetworkConfig::validated(
            {TierConfig{1.0, 50.0, 0.3, 0.7}, TierConfig{2.0, 45.0, 0.3, 0.7}},
            100.0, 4.0, 2e8, 0.2);
        const SpectrumAlloc eta = eta_priority_order(cfg);
        CHECK(eta[0] == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(eta[1] == doctest::Approx(0.7).epsilon(1e-12));
    }

    SUBCASE("maximizes every nondecreasing linear objective over the polytope") {
        PhiloxRng rng(301, 0);
        for (int trial = 0; trial < 100; ++trial) {
            const int k = 2 + static_cast<int>(uniform_double(rng) * 3);  // 2..4
            const NetworkConfig cfg = random_instance(rng, k, InstanceKind::sparse);
            const SpectrumAlloc eta = eta_priority_order(cfg);
            std::vector<double> coeff(static_cast<std::size_t>(k));
            double prev = 0.0;
            for (double& m : coeff) {
                prev += uniform_double(rng);
                m = prev;  // nondecreasing by construction
            }
            double value = 0.0;
            for (int i = 0; i < k; ++i)
                value += eta[i] * coeff[static_cast<std::size_t>(i)];
            const double best = oracles::lp_vertex_max(cfg, coeff);
            CHECK(value >= best - 1e-9 * std::abs(best));
        }
    }

    SUBCASE("infeasible boxes rejected") {
        NetworkConfig broken = reference_config(100.0);
        for (TierConfig& t : broken.tiers) t.eta_min = 0.5;  // sums to 1.5
        CHECK_THROWS_AS(eta_priority_order(broken), ConfigError);
    }
}

TEST_CASE("sparse association solver") {
    const double c = constant_c(4.0, 0.2);

    SUBCASE("identical tiers and uniform eta give the uniform split") {
        const NetworkConfig sym = NetworkConfig::validated(
            {TierConfig{4.0, 40.0, 0.2, 0.5}, TierConfig{4.0, 40.0, 0.2, 0.5},
             TierConfig{4.0, 40.0, 0.2, 0.5}},
            30.0, 4.0, 2e8, 0.2);  // mu small enough to be sparse
        REQUIRE(classify_scenario(sym, c).tag == UeScenario::sparse);
        const SpectrumAlloc eta = SpectrumAlloc::checked({1.0 / 3, 1.0 / 3, 1.0 / 3}, sym);
        const AssocVector a = solve_sparse_assoc(sym, eta, c);
        for (int k = 0; k < 3; ++k) CHECK(a[k] == doctest::Approx(1.0 / 3).epsilon(1e-6));
    }

    SUBCASE("KKT residual, box feasibility, and the ordering property") {
        PhiloxRng rng(302, 0);
        for (int trial = 0; trial < 60; ++trial) {
            const int k = 2 + static_cast<int>(uniform_double(rng) * 3);
            const NetworkConfig cfg = random_instance(rng, k, InstanceKind::sparse);
            const double cc = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
            const SpectrumAlloc eta = eta_priority_order(cfg);
            int iters = 0;
            const AssocVector a = solve_sparse_assoc(cfg, eta, cc, {}, &iters);
            CHECK(iters > 0);
            CHECK(sparse_kkt_residual(cfg, eta, a, cc) <= 1e-8);
            double prev = -1.0;
            for (int i = 0; i < k; ++i) {
                const double a_i = kernel_peak(cfg.lambda(i), cfg.ue_density_per_km2, cc);
                CHECK(a[i] <= a_i + 1e-9);
                const double m = rate_kernel_m(a[i], cfg.lambda(i),
                                               cfg.ue_density_per_km2, cc);
                CHECK(m >= prev - 1e-12);  // Lemma "Ordering Property"
                prev = m;
            }
        }
    }

    SUBCASE("objective matches the grid oracle to 1e-3 relative") {
        PhiloxRng rng(303, 0);
        for (int trial = 0; trial < 6; ++trial) {
            const int k = trial % 2 == 0 ? 2 : 3;
            const NetworkConfig cfg = random_instance(rng, k, InstanceKind::sparse);
            const double cc = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
            const SsauaSolution sol = ssaua_solve(cfg);
            const BaselineSolution grid = grid_search_baseline(cfg, cc, 0.01, 1e-3);
            CHECK(std::abs(grid.objective_bps - sol.objective_bps) /
                      grid.objective_bps <=
                  1e-3);
        }
    }

    SUBCASE("inconsistent classification is an internal error") {
        const NetworkConfig dense_cfg = reference_config(500.0);
        const SpectrumAlloc eta = eta_priority_order(dense_cfg);
        CHECK_THROWS_AS(solve_sparse_assoc(dense_cfg, eta, c), NumericError);
    }
}

TEST_CASE("dense association closed form") {
    const double c = constant_c(4.0, 0.2);

    SUBCASE("frozen reference point at mu = 500") {
        const AssocVector a = solve_dense_assoc(reference_config(500.0), c);
        CHECK(a[0] == doctest::Approx(0.44330482621).epsilon(1e-9));
        CHECK(a[1] == doctest::Approx(0.230590691091).epsilon(1e-9));
        CHECK(a[2] == doctest::Approx(0.326104482699).epsilon(1e-9));
        CHECK(a[0] + a[1] + a[2] == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("two tiers with equal thresholds 0.4: tier 1 absorbs the slack") {
        // engineer a_1 = a_2 = 0.4: lambda_2 = lambda_1 forces equal peaks,
        // tie-broken by construction; pick mu so sqrt(lambda/(mu C)) = 0.4
        const double lambda = 4.0;
        const double mu = lambda / (0.16 * c);
        const NetworkConfig cfg = NetworkConfig::validated(
            {TierConfig{lambda, 46.0, 0.3, 0.7}, TierConfig{lambda, 40.0, 0.3, 0.7}},
            mu, 4.0, 2e8, 0.2);
        const AssocVector a = solve_dense_assoc(cfg, c);
        CHECK(a[0] == doctest::Approx(0.6).epsilon(1e-6));
        CHECK(a[1] == doctest::Approx(0.4).epsilon(1e-6));
    }

    SUBCASE("ordering property of the approximate kernels") {
        PhiloxRng rng(304, 0);
        for (int trial = 0; trial < 60; ++trial) {
            const int k = 2 + static_cast<int>(uniform_double(rng) * 3);
            const NetworkConfig cfg = random_instance(rng, k, InstanceKind::dense);
            const double cc = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
            const AssocVector a = solve_dense_assoc(cfg, cc);
            double prev = -1.0;
            for (int i = 0; i < k; ++i) {
                const double m = rate_kernel_mbar(a[i], cfg.lambda(i),
                                                  cfg.ue_density_per_km2, cc);
                CHECK(m >= prev - 1e-12);
                prev = m;
            }
        }
    }

    SUBCASE("no feasible single-pair move improves the approximate objective") {
        PhiloxRng rng(305, 0);
        for (int trial = 0; trial < 40; ++trial) {
            const int k = 2 + static_cast<int>(uniform_double(rng) * 3);
            const NetworkConfig cfg = random_instance(rng, k, InstanceKind::dense);
            const double cc = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
            const SpectrumAlloc eta = eta_priority_order(cfg);
            const AssocVector a = solve_dense_assoc(cfg, cc);
            const double base = objective_f_approx(cfg, eta, a, cc);
            const double delta = 1e-4;
            const double a_1 = kernel_peak(cfg.lambda(0), cfg.ue_density_per_km2, cc);
            // moving mass from tier 1 onto any higher tier keeps A >= a
            // feasible (tier 1 holds all the slack); it must not help
            if (a[0] - delta < a_1) continue;
            for (int j = 1; j < k; ++j) {
                std::vector<double> perturbed = a.a;
                perturbed[0] -= delta;
                perturbed[static_cast<std::size_t>(j)] += delta;
                const double moved =
                    objective_f_approx(cfg, eta, AssocVector{perturbed}, cc);
                CHECK(moved <= base + 1e-12 * base);
            }
        }
    }
}

TEST_CASE("gap certificate") {
    const double c = constant_c(4.0, 0.2);

    SUBCASE("E' equals F' - F exactly at random dense points") {
        PhiloxRng rng(306, 0);
        for (int trial = 0; trial < 50; ++trial) {
            const int k = 2 + static_cast<int>(uniform_double(rng) * 3);
            const NetworkConfig cfg = random_instance(rng, k, InstanceKind::dense);
            const double cc = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
            const SpectrumAlloc eta = eta_priority_order(cfg);
            const AssocVector a = solve_dense_assoc(cfg, cc);
            const GapCertificate gap = gap_certificate(cfg, eta, a, cc);
            const double direct = objective_f_approx(cfg, eta, a, cc) -
                                  objective_f(cfg, eta, a, cc);
            CHECK(gap.e_prime_bps == doctest::Approx(direct).epsilon(1e-9));
        }
    }

    SUBCASE("scaling-law bound at the reference dense point") {
        const NetworkConfig cfg = reference_config(500.0);
        const SpectrumAlloc eta = eta_priority_order(cfg);
        const AssocVector a = solve_dense_assoc(cfg, c);
        const GapCertificate gap = gap_certificate(cfg, eta, a, c);
        CHECK(std::sqrt(10.0 * c / 500.0) ==
              doctest::Approx(0.0613300370314).epsilon(1e-9));
        CHECK(gap.epsilon_bound <= 0.0613300370314 + 1e-12);
    }

    SUBCASE("bound vanishes as the UE density grows") {
        double prev = 1.0;
        for (double mu : {500.0, 5000.0, 50000.0}) {
            const NetworkConfig cfg = reference_config(mu);
            const SpectrumAlloc eta = eta_priority_order(cfg);
            const AssocVector a = solve_dense_assoc(cfg, c);
            const double bound = gap_certificate(cfg, eta, a, c).epsilon_bound;
            CHECK(bound < prev);
            prev = bound;
        }
        CHECK(prev < 0.01);
    }
}

TEST_CASE("grid-search oracle") {
    const double c = constant_c(4.0, 0.2);

    SUBCASE("grid steps must be positive") {
        CHECK_THROWS_AS(grid_search_baseline(reference_config(100.0), c, 0.0, 1e-2),
                        ConfigError);
        CHECK_THROWS_AS(grid_search_baseline(reference_config(100.0), c, 0.1, -1.0),
                        ConfigError);
    }

    SUBCASE("dominates SSAUA up to grid slack, both scenarios") {
        PhiloxRng rng(307, 0);
        for (int trial = 0; trial < 8; ++trial) {
            const InstanceKind kind =
                trial % 2 == 0 ? InstanceKind::sparse : InstanceKind::dense;
            const NetworkConfig cfg = random_instance(rng, 2 + trial % 2, kind);
            const double cc = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
            const SsauaSolution sol = ssaua_solve(cfg);
            const BaselineSolution grid = grid_search_baseline(cfg, cc, 0.01, 1e-3);
            CHECK(grid.objective_bps >= sol.objective_bps * (1.0 - 2e-3));
            if (kind == InstanceKind::dense) {
                const double bound = std::sqrt(cfg.lambda(cfg.num_tiers() - 1) * cc /
                                               cfg.ue_density_per_km2);
                CHECK((grid.objective_bps - sol.objective_bps) / grid.objective_bps <=
                      bound);
            }
        }
    }

    SUBCASE("structured eta set agrees with the full grid at K = 2") {
        PhiloxRng rng(308, 0);
        for (int trial = 0; trial < 5; ++trial) {
            const NetworkConfig cfg = random_instance(
                rng, 2, trial % 2 == 0 ? InstanceKind::sparse : InstanceKind::dense);
            const double cc = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
            const BaselineSolution structured = grid_search_baseline(cfg, cc, 1e-3, 5e-3);
            GridSearchOptions full;
            full.structured_eta = false;
            const BaselineSolution dense_grid =
                grid_search_baseline(cfg, cc, 1e-3, 5e-3, full);
            // the boundary-structure claim: the full grid cannot beat the
            // structured candidate set beyond its own eta resolution
            CHECK(dense_grid.objective_bps <=
                  structured.objective_bps + 2e-3 * structured.objective_bps);
        }
    }

    SUBCASE("parallel and serial scans return the identical argmax") {
        const NetworkConfig cfg = reference_config(300.0);
        GridSearchOptions serial;
        serial.parallel = false;
        const BaselineSolution a = grid_search_baseline(cfg, c, 0.01, 2e-3, serial);
        const BaselineSolution b = grid_search_baseline(cfg, c, 0.01, 2e-3);
        CHECK(a.objective_bps == b.objective_bps);
        CHECK(a.assoc.a == b.assoc.a);
        CHECK(a.eta.eta == b.eta.eta);
    }

    SUBCASE("refinement never lowers the objective") {
        PhiloxRng rng(309, 0);
        for (int trial = 0; trial < 6; ++trial) {
            const NetworkConfig cfg = random_instance(
                rng, 3, trial % 2 == 0 ? InstanceKind::sparse : InstanceKind::dense);
            const double cc = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
            const BaselineSolution raw = grid_search_baseline(cfg, cc, 0.01, 0.01);
            GridSearchOptions polish;
            polish.refine = true;
            const BaselineSolution refined = grid_search_baseline(cfg, cc, 0.01, 0.01, polish);
            CHECK(refined.objective_bps >= raw.objective_bps);
        }
    }
}

TEST_CASE("density-thresholding dichotomy at grid optima") {
    PhiloxRng rng(310, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const InstanceKind kind =
            trial % 2 == 0 ? InstanceKind::sparse : InstanceKind::dense;
        const NetworkConfig cfg = random_instance(rng, 2 + trial % 2, kind);
        const double cc = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
        const double slack = 0.01;  // one grid step
        const BaselineSolution grid = grid_search_baseline(cfg, cc, 0.01, slack);
        for (int i = 0; i < cfg.num_tiers(); ++i) {
            const double a_i = kernel_peak(cfg.lambda(i), cfg.ue_density_per_km2, cc);
            if (kind == InstanceKind::sparse)
                CHECK(grid.assoc[i] <= a_i + slack + 1e-12);
            else
                CHECK(grid.assoc[i] >= a_i - slack - 1e-12);
        }
    }
}

TEST_CASE("exchange argument: a straddling pair is always improvable") {
    PhiloxRng rng(311, 0);
    int exercised = 0;
    for (int trial = 0; trial < 400 && exercised < 60; ++trial) {
        const int k = 2 + static_cast<int>(uniform_double(rng) * 3);
        const NetworkConfig cfg = random_instance(rng, k, InstanceKind::sparse);
        const double cc = constant_c(cfg.pathloss_exponent, cfg.sir_threshold);
        const SpectrumAlloc eta = eta_priority_order(cfg);

        // random simplex point
        std::vector<double> a(static_cast<std::size_t>(k));
        double total = 0.0;
        for (double& x : a) {
            x = -std::log(1.0 - uniform_double(rng));
            total += x;
        }
        for (double& x : a) x /= total;

        // find i with A_i < a_i and j with A_j > a_j, margins >= 2 delta
        const double delta = 1e-4;
        int lo = -1, hi = -1;
        for (int i = 0; i < k; ++i) {
            const double peak = kernel_peak(cfg.lambda(i), cfg.ue_density_per_km2, cc);
            if (a[static_cast<std::size_t>(i)] < peak - 2 * delta) lo = i;
            if (a[static_cast<std::size_t>(i)] > peak + 2 * delta) hi = i;
        }
        if (lo < 0 || hi < 0) continue;
        ++exercised;

        const double before = objective_f(cfg, eta, AssocVector{a}, cc);
        a[static_cast<std::size_t>(lo)] += delta;
        a[static_cast<std::size_t>(hi)] -= delta;
        const double after = objective_f(cfg, eta, AssocVector{a}, cc);
        CHECK(after > before);  // Lemma 1: such points cannot be optimal
    }
    CHECK(exercised >= 60);
}

TEST_CASE("max-power baseline") {
    const double c = constant_c(4.0, 0.2);

    SUBCASE("frozen association shares at the reference powers") {
        const BaselineSolution mp = max_power_baseline(reference_config(100.0), c);
        CHECK(mp.assoc[0] == doctest::Approx(0.279240779944).epsilon(1e-9));
        CHECK(mp.assoc[1] == doctest::Approx(0.441518440112).epsilon(1e-9));
        CHECK(mp.assoc[2] == doctest::Approx(0.279240779944).epsilon(1e-9));
        // 1/3 is feasible inside every reference box
        for (int k = 0; k < 3; ++k)
            CHECK(mp.eta[k] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    }

    SUBCASE("identical tiers with pinned spectrum: SSAUA collapses onto it") {
        // with slack in the eta boxes the priority recurrence tilts spectrum
        // (and then association) toward the top tier even when tiers are
        // identical, so exact symmetry needs the boxes pinned at 1/K
        const double third = 1.0 / 3;
        const NetworkConfig sym = NetworkConfig::validated(
            {TierConfig{4.0, 40.0, third, third}, TierConfig{4.0, 40.0, third, third},
             TierConfig{4.0, 40.0, third, third}},
            30.0, 4.0, 2e8, 0.2);
        const BaselineSolution mp = max_power_baseline(sym, c);
        const SsauaSolution sol = ssaua_solve(sym);
        CHECK(mp.objective_bps == doctest::Approx(sol.objective_bps).epsilon(1e-9));
        CHECK(mp.assoc[0] == doctest::Approx(third).epsilon(1e-8));
    }

    SUBCASE("never beats SSAUA across the reference density sweep") {
        for (double mu = 50.0; mu <= 800.0; mu += 50.0) {
            const NetworkConfig cfg = reference_config(mu);
            const SsauaSolution sol = ssaua_solve(cfg);
            const BaselineSolution mp = max_power_baseline(cfg, c);
            CHECK(sol.objective_bps >= mp.objective_bps);
        }
    }

    SUBCASE("uniform split outside the boxes is projected onto them") {
        const NetworkConfig cfg = NetworkConfig::validated(
            {TierConfig{1.0, 50.0, 0.05, 0.15}, TierConfig{2.0, 45.0, 0.20, 0.50},
             TierConfig{4.0, 40.0, 0.40, 0.60}},
            100.0, 4.0, 2e8, 0.2);
        const BaselineSolution mp = max_power_baseline(cfg, c);
        double sum = 0.0;
        for (int k = 0; k < 3; ++k) {
            const TierConfig& t = cfg.tiers[static_cast<std::size_t>(k)];
            CHECK(mp.eta[k] >= t.eta_min - 1e-12);
            CHECK(mp.eta[k] <= t.eta_max + 1e-12);
            sum += mp.eta[k];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mp.eta[0] == doctest::Approx(0.15).epsilon(1e-9));  // clipped down
    }
}

TEST_CASE("full pipeline composition") {
    SUBCASE("reference sparse point") {
        const SsauaSolution sol = ssaua_solve(reference_config(100.0));
        CHECK(sol.scenario.tag == UeScenario::sparse);
        CHECK(!sol.gap_bound_relative.has_value());
        CHECK(sol.solver_iterations > 0);
        CHECK(sol.eta[0] == doctest::Approx(0.20).epsilon(1e-12));
        // bias maps back to the association the solver chose
        const AssocVector round = assoc_from_bias(reference_config(100.0), sol.bias);
        for (int k = 0; k < 3; ++k)
            CHECK(round[k] == doctest::Approx(sol.assoc[k]).epsilon(1e-9));
    }

    SUBCASE("reference dense point carries a certificate") {
        const SsauaSolution sol = ssaua_solve(reference_config(500.0));
        CHECK(sol.scenario.tag == UeScenario::dense);
        REQUIRE(sol.gap_bound_relative.has_value());
        CHECK(*sol.gap_bound_relative <= 0.0613300370314 + 1e-12);
        CHECK(*sol.gap_bound_relative > 0.0);
    }

    SUBCASE("exact boundary takes the trivial branch") {
        const double c = constant_c(4.0, 0.2);
        const double mu_star = boundary_ue_density(reference_config(100.0), c);
        const SsauaSolution sol = ssaua_solve(reference_config(mu_star));
        CHECK(sol.scenario.tag == UeScenario::boundary);
        for (int k = 0; k < 3; ++k)
            CHECK(sol.assoc[k] ==
                  doctest::Approx(sol.scenario.a_thresholds[static_cast<std::size_t>(k)])
                      .epsilon(1e-7));
    }
}
