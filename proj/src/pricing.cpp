#include "hetnet/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hetnet {

namespace {

// H_k = eta_k W log2(1+T) / (A_k mu/lambda_k + 1), the per-tier rate weight
// of the individual UE's problem (the crowd's association is held at A*).
std::vector<double> rate_weights(const NetworkConfig& config,
                                 const SpectrumAlloc& eta_star,
                                 const AssocVector& assoc_star) {
    const double scale = config.bandwidth_hz * std::log2(1.0 + config.sir_threshold);
    const double mu = config.ue_density_per_km2;
    std::vector<double> h(static_cast<std::size_t>(config.num_tiers()));
    for (int k = 0; k < config.num_tiers(); ++k)
        h[static_cast<std::size_t>(k)] =
            scale * eta_star[k] / (assoc_star[k] * mu / config.lambda(k) + 1.0);
    return h;
}

}  // namespace

PriceVector compute_prices(const NetworkConfig& config, const SpectrumAlloc& eta_star,
                           const AssocVector& assoc_star, double c,
                           double nu_offset) {
    const int k = config.num_tiers();
    const std::vector<double> h = rate_weights(config, eta_star, assoc_star);

    std::vector<double> raw(static_cast<std::size_t>(k));
    double nu = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
        const double denom = 1.0 + c * assoc_star[i];
        raw[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)] / (denom * denom);
        if (assoc_star[i] > 0.0)
            nu = std::min(nu, raw[static_cast<std::size_t>(i)]);
    }
    if (!std::isfinite(nu))
        throw NumericError("compute_prices: designed association has no attainable tier");

    PriceVector prices;
    prices.surcharge_bps.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        if (assoc_star[i] > 0.0)
            prices.surcharge_bps[static_cast<std::size_t>(i)] =
                raw[static_cast<std::size_t>(i)] - nu + nu_offset;
        // else: unattainable sentinel (empty optional)
    }
    return prices;
}

AssocVector best_response(const NetworkConfig& config, const SpectrumAlloc& eta_star,
                          const AssocVector& assoc_star, const PriceVector& prices,
                          double c) {
    const int k = config.num_tiers();
    if (prices.size() != k)
        throw ConfigError("best_response: price dimension does not match tier count");
    const std::vector<double> h = rate_weights(config, eta_star, assoc_star);

    // Each concave term H_k A/(1+CA) - c_k A has slope H_k/(1+CA)^2 - c_k,
    // strictly decreasing in A, so for a multiplier nu the coordinate optimum
    // is A_k(nu) = (sqrt(H_k/(nu + c_k)) - 1)/C clipped at 0. A_k(nu) > 0 iff
    // nu < H_k - c_k, and A_k -> infinity as nu -> -min c_k, so the sum hits 1
    // somewhere in (-min c_k, max(H_k - c_k)).
    const auto coordinate = [&](int i, double nu) {
        if (!prices.attainable(i)) return 0.0;
        const double ci = *prices.surcharge_bps[static_cast<std::size_t>(i)];
        const double denom = nu + ci;
        if (denom <= 0.0) return std::numeric_limits<double>::infinity();
        const double root = std::sqrt(h[static_cast<std::size_t>(i)] / denom);
        return root > 1.0 ? (root - 1.0) / c : 0.0;
    };
    const auto total_at = [&](double nu) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += coordinate(i, nu);
        return s;
    };

    double min_price = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i < k; ++i) {
        if (!prices.attainable(i)) continue;
        const double ci = *prices.surcharge_bps[static_cast<std::size_t>(i)];
        min_price = std::min(min_price, ci);
        hi = std::max(hi, h[static_cast<std::size_t>(i)] - ci);
    }
    if (!std::isfinite(min_price))
        throw NumericError("best_response: every tier is priced out");

    double lo = -min_price;  // open end; evaluated only at interior midpoints
    for (int it = 0; it < 500 && hi - lo > 1e-18 * std::max(1.0, std::abs(hi)); ++it) {
        const double nu = 0.5 * (lo + hi);
        (total_at(nu) >= 1.0 ? lo : hi) = nu;
    }

    const double nu = 0.5 * (lo + hi);
    std::vector<double> a(static_cast<std::size_t>(k));
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        a[static_cast<std::size_t>(i)] = coordinate(i, nu);
        total += a[static_cast<std::size_t>(i)];
    }
    if (!(total > 0.0) || std::abs(total - 1.0) > 1e-6)
        throw NumericError("best_response: multiplier bisection failed to meet the simplex constraint");
    for (double& x : a) x /= total;
    return AssocVector{std::move(a)};
}

double best_response_kkt_residual(const NetworkConfig& config,
                                  const SpectrumAlloc& eta_star,
                                  const AssocVector& assoc_star,
                                  const PriceVector& prices, double c,
                                  const AssocVector& candidate) {
    const int k = config.num_tiers();
    const std::vector<double> h = rate_weights(config, eta_star, assoc_star);

    double residual = 0.0;
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += candidate[i];
    residual = std::abs(sum - 1.0);

    // slope of each attainable term at the candidate point
    std::vector<double> slope(static_cast<std::size_t>(k), 0.0);
    double nu = 0.0;
    int interior = 0;
    for (int i = 0; i < k; ++i) {
        if (!prices.attainable(i)) continue;
        const double denom = 1.0 + c * candidate[i];
        slope[static_cast<std::size_t>(i)] =
            h[static_cast<std::size_t>(i)] / (denom * denom) -
            *prices.surcharge_bps[static_cast<std::size_t>(i)];
        if (candidate[i] > 1e-12) {
            nu += slope[static_cast<std::size_t>(i)];
            ++interior;
        }
    }
    if (interior == 0) return residual;
    nu /= interior;

    const double scale = std::max(1.0, std::abs(nu));
    for (int i = 0; i < k; ++i) {
        if (!prices.attainable(i)) {
            residual = std::max(residual, candidate[i]);  // priced-out tier must sit at 0
            continue;
        }
        if (candidate[i] > 1e-12)
            residual = std::max(residual, std::abs(slope[static_cast<std::size_t>(i)] - nu) / scale);
        else
            residual = std::max(residual,
                                std::max(0.0, slope[static_cast<std::size_t>(i)] - nu) / scale);
    }
    return residual;
}

}  // namespace hetnet
