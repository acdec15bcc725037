#include "hetnet/instances.hpp"

#include <algorithm>
#include <cmath>

#include "hetnet/analytic.hpp"
#include "hetnet/ssaua.hpp"

namespace hetnet {

namespace {

double log_uniform(PhiloxRng& rng, double lo, double hi) {
    return std::exp(uniform_range(rng, std::log(lo), std::log(hi)));
}

}  // namespace

NetworkConfig random_instance(PhiloxRng& rng, int tiers, InstanceKind kind) {
    const std::size_t k = static_cast<std::size_t>(tiers);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<double> lambdas(k);
        for (double& l : lambdas) l = log_uniform(rng, 0.5, 30.0);
        std::sort(lambdas.begin(), lambdas.end());

        std::vector<double> powers(k);
        for (double& p : powers) p = uniform_range(rng, 30.0, 56.0);
        std::sort(powers.rbegin(), powers.rend());  // denser tiers transmit less

        // ascending eta_min with a controlled sum, then ascending increments
        // sized so the eta_max sum clears 1
        std::vector<double> mins(k), gaps(k);
        double min_raw = 0.0, gap_raw = 0.0;
        for (double& v : mins) {
            v = uniform_range(rng, 0.2, 1.0);
            min_raw += v;
        }
        for (double& v : gaps) {
            v = uniform_range(rng, 0.2, 1.0);
            gap_raw += v;
        }
        std::sort(mins.begin(), mins.end());
        std::sort(gaps.begin(), gaps.end());
        const double min_sum = uniform_range(rng, 0.35, 0.8);
        const double max_sum = 1.0 + uniform_range(rng, 0.3, 0.8);
        for (double& v : mins) v *= min_sum / min_raw;
        for (double& v : gaps) v *= (max_sum - min_sum) / gap_raw;

        std::vector<TierConfig> cfg(k);
        for (std::size_t i = 0; i < k; ++i) {
            cfg[i].lambda_per_km2 = lambdas[i];
            cfg[i].power_dbm = powers[i];
            cfg[i].eta_min = mins[i];
            cfg[i].eta_max = std::min(mins[i] + gaps[i], 1.0);
        }

        const double gamma = uniform_range(rng, 2.5, 5.0);
        const double sir_t = log_uniform(rng, 0.05, 2.0);
        const double bandwidth = 2.0e8;

        try {
            NetworkConfig probe = NetworkConfig::validated(cfg, 1.0, gamma, bandwidth, sir_t);
            const double c = constant_c(gamma, sir_t);
            const double mu_star = boundary_ue_density(probe, c);
            const double mu = kind == InstanceKind::sparse
                                  ? mu_star * uniform_range(rng, 0.25, 0.8)
                                  : mu_star * uniform_range(rng, 1.5, 6.0);
            return NetworkConfig::validated(std::move(cfg), mu, gamma, bandwidth, sir_t);
        } catch (const ConfigError&) {
            continue;  // box caps can push the eta_max sum under 1; redraw
        }
    }
    throw NumericError("random_instance: failed to draw a feasible configuration");
}

}  // namespace hetnet
