#pragma once

// Stochastic-geometry Monte Carlo simulator: PPP base stations and UEs on a
// square region, biased association, Rayleigh-faded same-tier SIR, per-BS
// spectrum sharing, and per-UE rates. UEs in a centered sampling square are
// evaluated; the full region contributes to loads and interference.

#include <cstdint>
#include <vector>

#include "hetnet/rng.hpp"
#include "hetnet/types.hpp"

namespace hetnet {

struct SimConfig {
    double region_km = 10.0;   // generation square side
    double sample_km = 5.0;    // centered sampling square side
    int rounds = 100;
    std::uint64_t seed = 1;
    bool torus = false;        // opt-in wrap-around distances (sensitivity checks)

    static SimConfig validated(double region_km, double sample_km, int rounds,
                               std::uint64_t seed, bool torus = false);
};

struct Point {
    double x = 0.0, y = 0.0;
};

/// One PPP draw of the network. Coordinates are centered on the region, so the
/// sampling square is |x|,|y| <= sample_km/2. The RNG continues the round's
/// stream: fading is drawn lazily during evaluation.
struct Realization {
    int round_index = 0;
    double region_km = 0.0;
    double sample_km = 0.0;
    bool torus = false;

    std::vector<std::vector<Point>> bs;  // per tier
    std::vector<Point> ue;
    PhiloxRng rng{0, 0};

    // filled by associate()
    std::vector<int> serving_tier;           // per UE
    std::vector<int> serving_index;          // per UE, index into bs[tier]
    std::vector<double> serving_distance_km; // per UE
    std::vector<std::vector<int>> load;      // per tier, per BS: associated UEs
};

/// Per-UE record for the optional raw sample dump (distribution tests).
struct UeSample {
    int round = 0;
    int tier = 0;
    double distance_km = 0.0;
    double serving_fade = 0.0;
    double sir = 0.0;
    double rate_bps = 0.0;
    bool covered = false;
};

struct RoundStats {
    int sampled_ues = 0;
    double mean_rate_bps = 0.0;               // over sampled UEs, zeros included
    std::vector<double> coverage_by_tier;     // NaN when the tier served no sampled UE
    std::vector<double> assoc_share_by_tier;  // of sampled UEs
    std::vector<double> mean_load_by_tier;    // region-wide UEs per BS; NaN without BSs
};

struct SimOutcome {
    double mean_rate_bps = 0.0;
    double mean_rate_ci95_bps = 0.0;
    std::vector<double> coverage_by_tier;
    std::vector<double> coverage_ci95_by_tier;
    std::vector<double> assoc_share_by_tier;
    std::vector<double> mean_load_by_tier;
    int rounds_used = 0;
    std::vector<RoundStats> rounds;   // per-round records, indexed by round
    std::vector<UeSample> samples;    // filled when requested, ordered by round
};

struct MonteCarloOptions {
    bool collect_samples = false;
};

/// Poisson counts and uniform placement for every tier and for the UEs,
/// deterministic given (seed, round_index): the round's stream is
/// PhiloxRng(seed, round_index) and the draw order is fixed (per-tier count
/// then coordinates, tiers in index order, then UEs).
Realization generate_realization(const NetworkConfig& config, const SimConfig& sim,
                                 int round_index);

/// Attaches every UE to the BS maximizing B_k P_k d^-gamma (no fading in the
/// association rule). Ties break toward the smaller distance, then the lower
/// tier. Throws NumericError when every bias is zero or no BS exists.
void associate(Realization& real, const NetworkConfig& config, const BiasVector& bias);

/// Draws Rayleigh fading per (sampled UE, same-tier BS) pair, forms the SIR,
/// and aggregates rates: rate = eta_k W / N_serving * log2(1+T) when
/// SIR >= T, else 0. Loads count all UEs in the generation region.
RoundStats evaluate_round(Realization& real, const NetworkConfig& config,
                          const SpectrumAlloc& eta,
                          std::vector<UeSample>* samples = nullptr);

/// OpenMP kernel: rounds run concurrently, each owning its RNG stream; the
/// reduction is an ordered pass over round indices, so the outcome is
/// independent of thread count.
SimOutcome run_monte_carlo(const NetworkConfig& config, const SimConfig& sim,
                           const SpectrumAlloc& eta, const BiasVector& bias,
                           const MonteCarloOptions& opts = {});

/// Serial reference implementation kept for testing and benchmarking; must
/// produce bit-identical outcomes to run_monte_carlo.
SimOutcome run_monte_carlo_reference(const NetworkConfig& config, const SimConfig& sim,
                                     const SpectrumAlloc& eta, const BiasVector& bias,
                                     const MonteCarloOptions& opts = {});

}  // namespace hetnet
