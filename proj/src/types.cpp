#include "hetnet/types.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace hetnet {

namespace {

double sum(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

}  // namespace

NetworkConfig NetworkConfig::validated(std::vector<TierConfig> tiers,
                                       double ue_density_per_km2,
                                       double pathloss_exponent,
                                       double bandwidth_hz, double sir_threshold) {
    const int k = static_cast<int>(tiers.size());
    if (k < 2) fail("network requires K >= 2 tiers, got " + std::to_string(k));
    if (!(pathloss_exponent > 2.0))
        fail("pathloss exponent gamma must exceed 2 (got " +
             std::to_string(pathloss_exponent) + ")");
    if (!(ue_density_per_km2 > 0.0)) fail("UE density mu must be positive");
    if (!(bandwidth_hz > 0.0)) fail("bandwidth W must be positive");
    if (!(sir_threshold > 0.0)) fail("SIR threshold T must be positive");

    NetworkConfig cfg;
    for (int i = 0; i < k; ++i) {
        const TierConfig& t = tiers[static_cast<std::size_t>(i)];
        const std::string tag = "tier " + std::to_string(i + 1);
        if (!(t.lambda_per_km2 > 0.0)) fail(tag + ": BS density lambda must be positive");
        if (!std::isfinite(t.power_dbm)) fail(tag + ": power_dbm must be finite");
        if (!(t.eta_min > 0.0)) fail(tag + ": eta_min must be positive");
        if (!(t.eta_min <= t.eta_max)) fail(tag + ": requires eta_min <= eta_max");
        if (!(t.eta_max <= 1.0)) fail(tag + ": requires eta_max <= 1");
    }

    // Densities must be nondecreasing as given; ties are then broken by
    // perturbing the later tier with xi = 1e-9 * lambda, cascading so runs of
    // equal densities end up strictly increasing.
    for (int i = 1; i < k; ++i)
        if (tiers[static_cast<std::size_t>(i)].lambda_per_km2 <
            tiers[static_cast<std::size_t>(i - 1)].lambda_per_km2)
            fail("tier densities must be sorted ascending (lambda_" +
                 std::to_string(i) + " < lambda_" + std::to_string(i + 1) +
                 " violated)");
    for (int i = 1; i < k; ++i) {
        const double prev = tiers[static_cast<std::size_t>(i - 1)].lambda_per_km2;
        double& cur = tiers[static_cast<std::size_t>(i)].lambda_per_km2;
        if (cur <= prev) {
            cur = prev * (1.0 + 1e-9);
            cfg.densities_perturbed = true;
        }
    }

    for (int i = 1; i < k; ++i) {
        const TierConfig& lo = tiers[static_cast<std::size_t>(i - 1)];
        const TierConfig& hi = tiers[static_cast<std::size_t>(i)];
        if (hi.eta_min < lo.eta_min)
            fail("eta_min must be nondecreasing in tier index");
        if (hi.eta_max < lo.eta_max)
            fail("eta_max must be nondecreasing in tier index");
    }

    double min_sum = 0.0, max_sum = 0.0;
    for (const TierConfig& t : tiers) {
        min_sum += t.eta_min;
        max_sum += t.eta_max;
    }
    if (min_sum > 1.0 + kSimplexSumTol) {
        std::ostringstream os;
        os << "sum of eta_min (" << min_sum << ") exceeds 1: spectrum boxes infeasible";
        fail(os.str());
    }
    if (max_sum < 1.0 - kSimplexSumTol) {
        std::ostringstream os;
        os << "sum of eta_max (" << max_sum << ") is below 1: spectrum boxes infeasible";
        fail(os.str());
    }

    cfg.tiers = std::move(tiers);
    cfg.ue_density_per_km2 = ue_density_per_km2;
    cfg.pathloss_exponent = pathloss_exponent;
    cfg.bandwidth_hz = bandwidth_hz;
    cfg.sir_threshold = sir_threshold;
    return cfg;
}

AssocVector AssocVector::checked(std::vector<double> v) {
    if (v.empty()) fail("association vector must be non-empty");
    for (double x : v)
        if (!(x >= 0.0)) fail("association probabilities must be nonnegative");
    const double s = sum(v);
    if (std::abs(s - 1.0) > kSimplexSumTol)
        fail("association probabilities must sum to 1 (got " + std::to_string(s) + ")");
    return AssocVector{std::move(v)};
}

BiasVector BiasVector::checked(std::vector<double> v) {
    if (v.empty()) fail("bias vector must be non-empty");
    for (double x : v)
        if (!(x >= 0.0)) fail("bias values must be nonnegative");
    const double s = sum(v);
    if (std::abs(s - 1.0) > kSimplexSumTol)
        fail("bias values must be normalized to sum 1 (got " + std::to_string(s) + ")");
    return BiasVector{std::move(v)};
}

BiasVector BiasVector::uniform(int k) {
    return BiasVector{std::vector<double>(static_cast<std::size_t>(k), 1.0 / k)};
}

SpectrumAlloc SpectrumAlloc::checked(std::vector<double> v, const NetworkConfig& config) {
    if (static_cast<int>(v.size()) != config.num_tiers())
        fail("spectrum allocation length does not match tier count");
    const double s = sum(v);
    if (std::abs(s - 1.0) > kSimplexSumTol)
        fail("spectrum fractions must sum to 1 (got " + std::to_string(s) + ")");
    for (int i = 0; i < config.num_tiers(); ++i) {
        const TierConfig& t = config.tiers[static_cast<std::size_t>(i)];
        const double x = v[static_cast<std::size_t>(i)];
        if (x < t.eta_min - kSimplexSumTol || x > t.eta_max + kSimplexSumTol)
            fail("eta_" + std::to_string(i + 1) + " = " + std::to_string(x) +
                 " outside box [" + std::to_string(t.eta_min) + ", " +
                 std::to_string(t.eta_max) + "]");
    }
    return SpectrumAlloc{std::move(v)};
}

}  // namespace hetnet
