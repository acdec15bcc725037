#pragma once

// Domain types for the K-tier downlink model: tier parameters, the network
// scenario, and the three simplex-constrained decision vectors.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetnet {

/// Thrown when a scenario/config violates a model invariant (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a numeric routine fails to converge or is inconsistent
/// with its preconditions (CLI exit code 3).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TierConfig {
    double lambda_per_km2 = 0.0;  // BS density, > 0
    double power_dbm = 0.0;       // transmit power
    double eta_min = 0.0;         // lower spectrum fraction, > 0
    double eta_max = 0.0;         // upper spectrum fraction, <= 1
};

/// dBm -> watts. Only power ratios matter in the model; the convention is
/// fixed for reproducibility.
inline double dbm_to_watts(double dbm) {
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

struct NetworkConfig {
    std::vector<TierConfig> tiers;      // ascending density, tier index 0..K-1
    double ue_density_per_km2 = 0.0;    // mu
    double pathloss_exponent = 0.0;     // gamma, > 2
    double bandwidth_hz = 0.0;          // W
    double sir_threshold = 0.0;         // T, linear
    bool densities_perturbed = false;   // set when equal densities were tie-broken

    /// Validates all invariants and resolves equal densities by perturbing the
    /// later tier by xi = 1e-9 * lambda. Throws ConfigError naming the violated
    /// invariant.
    static NetworkConfig validated(std::vector<TierConfig> tiers,
                                   double ue_density_per_km2,
                                   double pathloss_exponent, double bandwidth_hz,
                                   double sir_threshold);

    int num_tiers() const { return static_cast<int>(tiers.size()); }
    double lambda(int k) const { return tiers[static_cast<std::size_t>(k)].lambda_per_km2; }
    double power_watts(int k) const {
        return dbm_to_watts(tiers[static_cast<std::size_t>(k)].power_dbm);
    }
};

/// Association probabilities A, one per tier. Entries >= 0, sum 1 (tol 1e-9).
struct AssocVector {
    std::vector<double> a;
    static AssocVector checked(std::vector<double> v);
    double operator[](int k) const { return a[static_cast<std::size_t>(k)]; }
    int size() const { return static_cast<int>(a.size()); }
};

/// Association bias values B, normalized to sum 1. Entries >= 0.
struct BiasVector {
    std::vector<double> b;
    static BiasVector checked(std::vector<double> v);
    static BiasVector uniform(int k);
    double operator[](int k) const { return b[static_cast<std::size_t>(k)]; }
    int size() const { return static_cast<int>(b.size()); }
};

/// Spectrum allocation factors eta. Sum 1 (tol 1e-9), inside each tier's box.
struct SpectrumAlloc {
    std::vector<double> eta;
    static SpectrumAlloc checked(std::vector<double> v, const NetworkConfig& config);
    double operator[](int k) const { return eta[static_cast<std::size_t>(k)]; }
    int size() const { return static_cast<int>(eta.size()); }
};

inline constexpr double kSimplexSumTol = 1e-9;

}  // namespace hetnet
