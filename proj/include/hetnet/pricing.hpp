#pragma once

// Surcharge pricing: per-tier prices that make the designed association a
// best response for an individual UE, plus the UE's best-response solver used
// to verify the Nash property.

#include <optional>
#include <vector>

#include "hetnet/types.hpp"

namespace hetnet {

/// Per-tier surcharges in rate units (bit/s per unit association probability).
/// An unattainable tier (designed A*_k = 0) carries an explicit empty entry
/// rather than a large float, so serialization stays unambiguous.
struct PriceVector {
    std::vector<std::optional<double>> surcharge_bps;

    bool attainable(int k) const {
        return surcharge_bps[static_cast<std::size_t>(k)].has_value();
    }
    int size() const { return static_cast<int>(surcharge_bps.size()); }
};

/// Surcharges from the designed solution: with H_k = eta_k W log2(1+T) /
/// (A_k mu/lambda_k + 1), the raw stationarity value is H_k/(1 + C A_k)^2;
/// prices are raw_k minus the smallest raw value over attainable tiers, so the
/// minimum finite surcharge is exactly nu_offset (0 by default, the paper's
/// normalization; the offset only shifts prices and not the best response).
PriceVector compute_prices(const NetworkConfig& config, const SpectrumAlloc& eta_star,
                           const AssocVector& assoc_star, double c,
                           double nu_offset = 0.0);

/// The individual UE's optimum when everyone else follows the designed
/// association: maximizes sum_k [H_k A_k/(1 + C A_k) - c_k A_k] over the
/// simplex, with unattainable tiers pinned at 0. Solved by bisection on the
/// equality multiplier; each coordinate has the closed form
/// A_k = (sqrt(H_k/(nu + c_k)) - 1)/C clipped at 0.
AssocVector best_response(const NetworkConfig& config, const SpectrumAlloc& eta_star,
                          const AssocVector& assoc_star, const PriceVector& prices,
                          double c);

/// Stationarity/complementarity residual of an assignment for the UE problem
/// under the given prices; the Nash check asserts this at A = A*.
double best_response_kkt_residual(const NetworkConfig& config,
                                  const SpectrumAlloc& eta_star,
                                  const AssocVector& assoc_star,
                                  const PriceVector& prices, double c,
                                  const AssocVector& candidate);

}  // namespace hetnet
