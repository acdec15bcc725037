#pragma once

// Structured solver for the joint spectrum-allocation / user-association
// problem: density thresholding classifies the scenario, the priority-ordering
// recurrence fixes the spectrum split, and the association subproblem is
// solved by dual water-filling (sparse) or in closed form with a gap
// certificate (dense). Grid-search and max-power baselines live here too.

#include <optional>
#include <vector>

#include "hetnet/types.hpp"

namespace hetnet {

enum class UeScenario { sparse, dense, boundary };

const char* to_string(UeScenario tag);

struct ScenarioClass {
    UeScenario tag = UeScenario::sparse;
    std::vector<double> a_thresholds;  // a_k = sqrt(lambda_k / (mu C))
    double threshold_sum = 0.0;
};

struct SolverOptions {
    double boundary_tol = 1e-9;     // |sum a_k - 1| below this -> boundary branch
    double kkt_tol = 1e-8;
    int max_outer_iterations = 200; // water-filling bisection on the multiplier
};

struct SsauaSolution {
    ScenarioClass scenario;
    SpectrumAlloc eta;
    AssocVector assoc;
    BiasVector bias;
    double objective_bps = 0.0;
    std::optional<double> gap_bound_relative;  // present iff dense
    int solver_iterations = 0;
    double system_constant_c = 0.0;
};

/// a_k thresholds and the sparse/dense/boundary tag from sum a_k vs 1.
ScenarioClass classify_scenario(const NetworkConfig& config, double c,
                                double boundary_tol = 1e-9);

/// UE density at which sum a_k(mu) = 1, found by bisection on mu.
double boundary_ue_density(const NetworkConfig& config, double c);

/// Priority-ordering spectrum recurrence: the densest tier claims bandwidth
/// first, each lower tier gets what remains above the lower box bounds.
/// The same allocation is optimal in both scenarios.
SpectrumAlloc eta_priority_order(const NetworkConfig& config);

/// Sparse-scenario association: maximizes sum_k eta_k M_k(A_k) over the
/// simplex with A_k <= a_k by dual water-filling. Per multiplier value nu,
/// each coordinate solves eta_k M_k'(A) = nu by bisection on [0, a_k]; an
/// outer bisection drives sum A_k to 1. KKT residual <= opts.kkt_tol.
AssocVector solve_sparse_assoc(const NetworkConfig& config, const SpectrumAlloc& eta,
                               double c, const SolverOptions& opts = {},
                               int* iterations_out = nullptr);

/// Dense-scenario closed form: A_k = a_k for k >= 2, tier 1 absorbs the rest.
AssocVector solve_dense_assoc(const NetworkConfig& config, double c);

struct GapCertificate {
    double e_prime_bps = 0.0;     // F'(eta, A) - F(eta, A), exactly
    double epsilon_bound = 0.0;   // min(E'/F, sqrt(lambda_K C / mu))
};

/// Dense-scenario suboptimality certificate.
GapCertificate gap_certificate(const NetworkConfig& config, const SpectrumAlloc& eta,
                               const AssocVector& assoc, double c);

struct BaselineSolution {
    SpectrumAlloc eta;
    AssocVector assoc;
    double objective_bps = 0.0;
};

struct GridSearchOptions {
    // Search eta only over box-boundary patterns with at most one free
    // coordinate (pinned by the sum constraint). When false, eta is searched
    // on a full grid at eta_grid_step; intended for cross-validating the
    // structured set at small K.
    bool structured_eta = true;
    // Polish the best grid point with pairwise A-mass moves of shrinking step.
    bool refine = false;
    bool parallel = true;  // OpenMP over the A grid; result is order-independent
};

/// Exhaustive-search oracle: exact F evaluated over the eta candidate set and
/// the A simplex discretized at a_grid_step. Ties broken by lexicographically
/// smallest (eta, A).
BaselineSolution grid_search_baseline(const NetworkConfig& config, double c,
                                      double eta_grid_step, double a_grid_step,
                                      const GridSearchOptions& opts = {});

/// Equal spectrum split (projected into the boxes when 1/K is infeasible) with
/// unbiased max-received-power association.
BaselineSolution max_power_baseline(const NetworkConfig& config, double c);

/// Hill-climbs F(eta, .) from a starting association by pairwise mass moves
/// with steps shrinking from initial_step to 1e-9. Monotone in F; used by the
/// grid oracle's polish stage and as an extra multi-start for validation.
AssocVector refine_assoc(const NetworkConfig& config, double c,
                         const SpectrumAlloc& eta, const AssocVector& start,
                         double initial_step);

/// Full pipeline: C, classification, priority ordering, the association step
/// for the detected scenario, bias mapping, objective, and (dense only) the
/// gap certificate.
SsauaSolution ssaua_solve(const NetworkConfig& config, const SolverOptions& opts = {});

/// Stationarity + complementary-slackness residual of an association vector
/// for the sparse subproblem. Used by tests and the validate command.
double sparse_kkt_residual(const NetworkConfig& config, const SpectrumAlloc& eta,
                           const AssocVector& assoc, double c);

}  // namespace hetnet
