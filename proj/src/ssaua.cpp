#include "hetnet/ssaua.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetnet/analytic.hpp"

namespace hetnet {

const char* to_string(UeScenario tag) {
    switch (tag) {
        case UeScenario::sparse: return "sparse";
        case UeScenario::dense: return "dense";
        case UeScenario::boundary: return "boundary";
    }
    return "?";
}

ScenarioClass classify_scenario(const NetworkConfig& config, double c,
                                double boundary_tol) {
    ScenarioClass sc;
    const double mu = config.ue_density_per_km2;
    sc.a_thresholds.resize(static_cast<std::size_t>(config.num_tiers()));
    for (int k = 0; k < config.num_tiers(); ++k) {
        sc.a_thresholds[static_cast<std::size_t>(k)] = kernel_peak(config.lambda(k), mu, c);
        sc.threshold_sum += sc.a_thresholds[static_cast<std::size_t>(k)];
    }
    if (sc.threshold_sum > 1.0 + boundary_tol)
        sc.tag = UeScenario::sparse;
    else if (sc.threshold_sum < 1.0 - boundary_tol)
        sc.tag = UeScenario::dense;
    else
        sc.tag = UeScenario::boundary;
    return sc;
}

double boundary_ue_density(const NetworkConfig& config, double c) {
    // sum_k sqrt(lambda_k/(mu C)) is strictly decreasing in mu; bracket the
    // root of sum = 1 and bisect.
    const auto threshold_sum = [&](double mu) {
        double s = 0.0;
        for (int k = 0; k < config.num_tiers(); ++k)
            s += kernel_peak(config.lambda(k), mu, c);
        return s;
    };
    double lo = 1e-12, hi = 1.0;
    while (threshold_sum(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (threshold_sum(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SpectrumAlloc eta_priority_order(const NetworkConfig& config) {
    const int k = config.num_tiers();
    double min_sum = 0.0, max_sum = 0.0;
    for (const TierConfig& t : config.tiers) {
        min_sum += t.eta_min;
        max_sum += t.eta_max;
    }
    if (min_sum > 1.0 + kSimplexSumTol || max_sum < 1.0 - kSimplexSumTol)
        throw ConfigError("eta_priority_order: spectrum boxes cannot sum to 1");

    // prefix_min[l] = sum of eta_min below tier l
    std::vector<double> prefix_min(static_cast<std::size_t>(k), 0.0);
    for (int l = 1; l < k; ++l)
        prefix_min[static_cast<std::size_t>(l)] =
            prefix_min[static_cast<std::size_t>(l - 1)] +
            config.tiers[static_cast<std::size_t>(l - 1)].eta_min;

    std::vector<double> eta(static_cast<std::size_t>(k), 0.0);
    double allocated_above = 0.0;  // sum of eta already fixed for tiers > l
    for (int l = k - 1; l >= 0; --l) {
        const TierConfig& t = config.tiers[static_cast<std::size_t>(l)];
        const double remaining =
            1.0 - allocated_above - prefix_min[static_cast<std::size_t>(l)];
        eta[static_cast<std::size_t>(l)] = std::min(remaining, t.eta_max);
        allocated_above += eta[static_cast<std::size_t>(l)];
    }
    return SpectrumAlloc::checked(std::move(eta), config);
}

namespace {

// Root of eta_k M_k'(A) = nu on [0, a_k]; the derivative is strictly
// decreasing there (M_k concave on [0, a_k]).
double invert_kernel_slope(double nu, double eta_k, double lambda_k, double mu,
                           double c, double a_k) {
    if (nu <= 0.0) return a_k;
    if (nu >= eta_k * rate_kernel_m_deriv(0.0, lambda_k, mu, c)) return 0.0;
    double lo = 0.0, hi = a_k;
    for (int it = 0; it < 120 && (hi - lo) > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eta_k * rate_kernel_m_deriv(mid, lambda_k, mu, c) > nu)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

AssocVector solve_sparse_assoc(const NetworkConfig& config, const SpectrumAlloc& eta,
                               double c, const SolverOptions& opts,
                               int* iterations_out) {
    const int k = config.num_tiers();
    const double mu = config.ue_density_per_km2;

    std::vector<double> peaks(static_cast<std::size_t>(k));
    double peak_sum = 0.0;
    for (int i = 0; i < k; ++i) {
        peaks[static_cast<std::size_t>(i)] = kernel_peak(config.lambda(i), mu, c);
        peak_sum += peaks[static_cast<std::size_t>(i)];
    }
    if (peak_sum < 1.0)
        throw NumericError("solve_sparse_assoc: sum a_k < 1 contradicts the sparse classification");

    const auto assoc_at = [&](double nu, std::vector<double>& out) {
        double total = 0.0;
        for (int i = 0; i < k; ++i) {
            out[static_cast<std::size_t>(i)] =
                invert_kernel_slope(nu, eta[i], config.lambda(i), mu, c,
                                    peaks[static_cast<std::size_t>(i)]);
            total += out[static_cast<std::size_t>(i)];
        }
        return total;
    };

    // Multiplier bracket: at nu = 0 every coordinate sits at its peak
    // (sum > 1); at nu = max_k eta_k M_k'(0+) every coordinate is 0.
    double hi = 0.0;
    for (int i = 0; i < k; ++i)
        hi = std::max(hi, eta[i] * rate_kernel_m_deriv(1e-12, config.lambda(i), mu, c));
    double lo = 0.0;

    std::vector<double> assoc(static_cast<std::size_t>(k));
    int iters = 0;
    for (; iters < opts.max_outer_iterations; ++iters) {
        const double nu = 0.5 * (lo + hi);
        const double total = assoc_at(nu, assoc);
        if (std::abs(total - 1.0) < 1e-13) break;
        (total > 1.0 ? lo : hi) = nu;
        if (hi - lo <= 1e-18 * std::max(1.0, hi)) break;
    }
    assoc_at(0.5 * (lo + hi), assoc);
    if (iterations_out) *iterations_out = iters;

    double total = 0.0;
    for (double x : assoc) total += x;
    if (std::abs(total - 1.0) > kSimplexSumTol)
        throw NumericError("solve_sparse_assoc: water-filling failed to meet the simplex constraint");
    // clear bisection dust so the simplex sum is exact
    for (double& x : assoc) x /= total;
    return AssocVector{std::move(assoc)};
}

AssocVector solve_dense_assoc(const NetworkConfig& config, double c) {
    const int k = config.num_tiers();
    const double mu = config.ue_density_per_km2;
    std::vector<double> assoc(static_cast<std::size_t>(k));
    double tail = 0.0;
    for (int i = 1; i < k; ++i) {
        assoc[static_cast<std::size_t>(i)] = kernel_peak(config.lambda(i), mu, c);
        tail += assoc[static_cast<std::size_t>(i)];
    }
    assoc[0] = 1.0 - tail;
    if (assoc[0] < kernel_peak(config.lambda(0), mu, c) - 1e-12)
        throw NumericError("solve_dense_assoc: residual tier-1 share below a_1; scenario is not dense");
    return AssocVector{std::move(assoc)};
}

GapCertificate gap_certificate(const NetworkConfig& config, const SpectrumAlloc& eta,
                               const AssocVector& assoc, double c) {
    const double mu = config.ue_density_per_km2;
    const double scale = config.bandwidth_hz * std::log2(1.0 + config.sir_threshold);
    double e_prime = 0.0;
    for (int k = 0; k < config.num_tiers(); ++k) {
        const double load = assoc[k] * mu / config.lambda(k);
        e_prime += eta[k] / (load * (load + 1.0) * (1.0 / assoc[k] + c));
    }
    e_prime *= scale;

    const double f = objective_f(config, eta, assoc, c);
    const double lambda_max = config.lambda(config.num_tiers() - 1);
    const double scaling_law = std::sqrt(lambda_max * c / mu);
    return GapCertificate{e_prime, std::min(e_prime / f, scaling_law)};
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

BaselineSolution max_power_baseline(const NetworkConfig& config, double c) {
    const int k = config.num_tiers();

    // Equal split, projected into the boxes: clip, then push the residual
    // proportionally to the remaining slack (one pass is exact because the
    // box sums straddle 1).
    std::vector<double> eta(static_cast<std::size_t>(k), 1.0 / k);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        const TierConfig& t = config.tiers[static_cast<std::size_t>(i)];
        eta[static_cast<std::size_t>(i)] =
            std::clamp(eta[static_cast<std::size_t>(i)], t.eta_min, t.eta_max);
        total += eta[static_cast<std::size_t>(i)];
    }
    const double residual = 1.0 - total;
    if (std::abs(residual) > 0.0) {
        double slack = 0.0;
        for (int i = 0; i < k; ++i) {
            const TierConfig& t = config.tiers[static_cast<std::size_t>(i)];
            slack += residual > 0.0 ? t.eta_max - eta[static_cast<std::size_t>(i)]
                                    : eta[static_cast<std::size_t>(i)] - t.eta_min;
        }
        if (slack > 0.0) {
            for (int i = 0; i < k; ++i) {
                const TierConfig& t = config.tiers[static_cast<std::size_t>(i)];
                const double room = residual > 0.0
                                        ? t.eta_max - eta[static_cast<std::size_t>(i)]
                                        : eta[static_cast<std::size_t>(i)] - t.eta_min;
                eta[static_cast<std::size_t>(i)] += residual * room / slack;
            }
        }
    }

    BaselineSolution out{SpectrumAlloc::checked(std::move(eta), config),
                         assoc_from_bias(config, BiasVector::uniform(k)), 0.0};
    out.objective_bps = objective_f(config, out.eta, out.assoc, c);
    return out;
}

namespace {

// Candidate eta vectors with every coordinate at a box bound except at most
// one, which the sum constraint pins. These are exactly the vertices of
// {eta : sum = 1, min <= eta <= max}.
std::vector<std::vector<double>> structured_eta_candidates(const NetworkConfig& config) {
    const int k = config.num_tiers();
    std::vector<std::vector<double>> out;
    std::vector<double> eta(static_cast<std::size_t>(k));

    for (int free = -1; free < k; ++free) {
        const int fixed = free < 0 ? k : k - 1;
        for (unsigned mask = 0; mask < (1u << fixed); ++mask) {
            double fixed_sum = 0.0;
            int bit = 0;
            for (int i = 0; i < k; ++i) {
                if (i == free) continue;
                const TierConfig& t = config.tiers[static_cast<std::size_t>(i)];
                eta[static_cast<std::size_t>(i)] =
                    (mask >> bit++) & 1u ? t.eta_max : t.eta_min;
                fixed_sum += eta[static_cast<std::size_t>(i)];
            }
            if (free < 0) {
                if (std::abs(fixed_sum - 1.0) > 1e-12) continue;
            } else {
                const TierConfig& t = config.tiers[static_cast<std::size_t>(free)];
                const double rest = 1.0 - fixed_sum;
                if (rest < t.eta_min - 1e-12 || rest > t.eta_max + 1e-12) continue;
                eta[static_cast<std::size_t>(free)] =
                    std::clamp(rest, t.eta_min, t.eta_max);
            }
            out.push_back(eta);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::vector<double>> full_eta_candidates(const NetworkConfig& config,
                                                     double step) {
    const int k = config.num_tiers();
    std::vector<std::vector<double>> out;
    std::vector<double> eta(static_cast<std::size_t>(k));
    // grid over the first K-1 coordinates; the last is pinned by the sum
    const auto recurse = [&](auto&& self, int idx, double used) -> void {
        if (idx == k - 1) {
            const TierConfig& t = config.tiers[static_cast<std::size_t>(idx)];
            const double rest = 1.0 - used;
            if (rest < t.eta_min - 1e-12 || rest > t.eta_max + 1e-12) return;
            eta[static_cast<std::size_t>(idx)] = std::clamp(rest, t.eta_min, t.eta_max);
            out.push_back(eta);
            return;
        }
        const TierConfig& t = config.tiers[static_cast<std::size_t>(idx)];
        for (double v = t.eta_min; v <= t.eta_max + 1e-12; v += step) {
            eta[static_cast<std::size_t>(idx)] = std::min(v, t.eta_max);
            self(self, idx + 1, used + eta[static_cast<std::size_t>(idx)]);
        }
    };
    recurse(recurse, 0, 0.0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct GridBest {
    double objective = -std::numeric_limits<double>::infinity();
    std::vector<int> counts;  // A_k = counts[k] / n

    // total order: larger objective wins, ties go to the lexicographically
    // smallest composition (makes parallel reduction order-independent)
    bool better_than(const GridBest& other) const {
        if (objective != other.objective) return objective > other.objective;
        return counts < other.counts;
    }
};

// Best composition of n into K parts for one eta candidate, scanning
// sum_k weight_k * M_k(j_k / n). kernel[k][j] caches M_k(j/n).
GridBest best_assoc_on_grid(const std::vector<std::vector<double>>& kernel,
                            const std::vector<double>& eta, int n, bool parallel) {
    const int k = static_cast<int>(kernel.size());
    GridBest global;

#pragma omp parallel if (parallel)
    {
        GridBest local;
        std::vector<int> counts(static_cast<std::size_t>(k), 0);

        // recursion over tiers 1..K-1 with tier 0's count fixed per iteration
        const auto scan = [&](auto&& self, int idx, int remaining, double acc) -> void {
            if (idx == k - 1) {
                counts[static_cast<std::size_t>(idx)] = remaining;
                const double obj =
                    acc + eta[static_cast<std::size_t>(idx)] *
                              kernel[static_cast<std::size_t>(idx)]
                                    [static_cast<std::size_t>(remaining)];
                if (obj > local.objective ||
                    (obj == local.objective &&
                     (local.counts.empty() || counts < local.counts))) {
                    local.objective = obj;
                    local.counts = counts;
                }
                return;
            }
            for (int j = 0; j <= remaining; ++j) {
                counts[static_cast<std::size_t>(idx)] = j;
                self(self, idx + 1, remaining - j,
                     acc + eta[static_cast<std::size_t>(idx)] *
                               kernel[static_cast<std::size_t>(idx)]
                                     [static_cast<std::size_t>(j)]);
            }
        };

#pragma omp for schedule(static)
        for (int j0 = 0; j0 <= n; ++j0) {
            counts[0] = j0;
            if (k == 1) {
                if (j0 == n) scan(scan, 0, n, 0.0);
                continue;
            }
            scan(scan, 1, n - j0,
                 eta[0] * kernel[0][static_cast<std::size_t>(j0)]);
        }

#pragma omp critical(hetnet_grid_best)
        {
            if (!local.counts.empty() && local.better_than(global)) global = local;
        }
    }
    return global;
}

}  // namespace

BaselineSolution grid_search_baseline(const NetworkConfig& config, double c,
                                      double eta_grid_step, double a_grid_step,
                                      const GridSearchOptions& opts) {
    if (!(eta_grid_step > 0.0) || !(a_grid_step > 0.0))
        throw ConfigError("grid_search_baseline: grid steps must be positive");

    const int k = config.num_tiers();
    const double mu = config.ue_density_per_km2;
    const int n = static_cast<int>(std::llround(1.0 / a_grid_step));
    if (n < 1) throw ConfigError("grid_search_baseline: a_grid_step must be <= 1");

    std::vector<std::vector<double>> kernel(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        kernel[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n + 1));
        for (int j = 0; j <= n; ++j)
            kernel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rate_kernel_m(static_cast<double>(j) / n, config.lambda(i), mu, c);
    }

    const std::vector<std::vector<double>> etas =
        opts.structured_eta ? structured_eta_candidates(config)
                            : full_eta_candidates(config, eta_grid_step);
    if (etas.empty())
        throw NumericError("grid_search_baseline: no feasible eta candidate");

    // etas is lex-sorted, so keeping the first candidate on objective ties
    // implements the lexicographically-smallest (eta, A) tie-break.
    std::vector<double> best_eta;
    GridBest best;
    for (const std::vector<double>& eta : etas) {
        GridBest cand = best_assoc_on_grid(kernel, eta, n, opts.parallel);
        if (cand.counts.empty()) continue;
        if (best_eta.empty() || cand.objective > best.objective) {
            best = std::move(cand);
            best_eta = eta;
        }
    }

    std::vector<double> assoc(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        assoc[static_cast<std::size_t>(i)] =
            static_cast<double>(best.counts[static_cast<std::size_t>(i)]) / n;

    BaselineSolution out{SpectrumAlloc::checked(std::move(best_eta), config),
                         AssocVector{std::move(assoc)}, 0.0};
    if (opts.refine)
        out.assoc = refine_assoc(config, c, out.eta, out.assoc, 1.0 / n);
    out.objective_bps = objective_f(config, out.eta, out.assoc, c);
    return out;
}

AssocVector refine_assoc(const NetworkConfig& config, double c,
                         const SpectrumAlloc& eta, const AssocVector& start,
                         double initial_step) {
    const int k = config.num_tiers();
    const double mu = config.ue_density_per_km2;
    const auto objective = [&](const std::vector<double>& a) {
        double sum = 0.0;
        for (int i = 0; i < k; ++i)
            sum += eta[i] * rate_kernel_m(a[static_cast<std::size_t>(i)],
                                          config.lambda(i), mu, c);
        return sum;
    };

    std::vector<double> assoc = start.a;
    double cur = objective(assoc);
    double step = initial_step;
    long moves = 0;
    while (step > 1e-9 && moves < 200000) {
        bool improved = false;
        for (int i = 0; i < k && !improved; ++i) {
            for (int j = 0; j < k && !improved; ++j) {
                if (i == j || assoc[static_cast<std::size_t>(j)] < step) continue;
                std::vector<double> cand = assoc;
                cand[static_cast<std::size_t>(i)] += step;
                cand[static_cast<std::size_t>(j)] -= step;
                const double val = objective(cand);
                if (val > cur) {
                    assoc = std::move(cand);
                    cur = val;
                    improved = true;
                    ++moves;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return AssocVector{std::move(assoc)};
}

SsauaSolution ssaua_solve(const NetworkConfig& config, const SolverOptions& opts) {
    const double c = constant_c(config.pathloss_exponent, config.sir_threshold);

    SsauaSolution sol;
    sol.system_constant_c = c;
    sol.scenario = classify_scenario(config, c, opts.boundary_tol);
    sol.eta = eta_priority_order(config);

    switch (sol.scenario.tag) {
        case UeScenario::sparse:
            sol.assoc = solve_sparse_assoc(config, sol.eta, c, opts,
                                           &sol.solver_iterations);
            break;
        case UeScenario::dense:
            sol.assoc = solve_dense_assoc(config, c);
            break;
        case UeScenario::boundary: {
            // sum a_k = 1: the thresholds themselves are the solution
            std::vector<double> a = sol.scenario.a_thresholds;
            double total = 0.0;
            for (double x : a) total += x;
            for (double& x : a) x /= total;  // absorb the boundary tolerance
            sol.assoc = AssocVector{std::move(a)};
            break;
        }
    }

    sol.bias = bias_from_assoc(config, sol.assoc);
    sol.objective_bps = objective_f(config, sol.eta, sol.assoc, c);
    if (sol.scenario.tag == UeScenario::dense)
        sol.gap_bound_relative = gap_certificate(config, sol.eta, sol.assoc, c).epsilon_bound;
    return sol;
}

double sparse_kkt_residual(const NetworkConfig& config, const SpectrumAlloc& eta,
                           const AssocVector& assoc, double c) {
    const int k = config.num_tiers();
    const double mu = config.ue_density_per_km2;

    double residual = std::abs([&] {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += assoc[i];
        return s - 1.0;
    }());

    // multiplier estimate: mean slope over interior coordinates
    double nu = 0.0;
    int interior = 0;
    std::vector<double> slope(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double a_i = kernel_peak(config.lambda(i), mu, c);
        slope[static_cast<std::size_t>(i)] =
            eta[i] * rate_kernel_m_deriv(assoc[i], config.lambda(i), mu, c);
        if (assoc[i] > 1e-12 && assoc[i] < a_i - 1e-12) {
            nu += slope[static_cast<std::size_t>(i)];
            ++interior;
        }
    }
    if (interior == 0) return residual;
    nu /= interior;

    for (int i = 0; i < k; ++i) {
        const double a_i = kernel_peak(config.lambda(i), mu, c);
        const double g = slope[static_cast<std::size_t>(i)];
        if (assoc[i] <= 1e-12)
            residual = std::max(residual, std::max(0.0, g - nu));   // needs g <= nu
        else if (assoc[i] >= a_i - 1e-12)
            residual = std::max(residual, std::max(0.0, nu - g));   // needs g >= nu
        else
            residual = std::max(residual, std::abs(g - nu));
    }
    return residual;
}

}  // namespace hetnet
