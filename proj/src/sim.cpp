#include "hetnet/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hetnet {

SimConfig SimConfig::validated(double region_km, double sample_km, int rounds,
                               std::uint64_t seed, bool torus) {
    if (!(region_km > 0.0)) throw ConfigError("sim: region side must be positive");
    if (!(sample_km > 0.0) || sample_km > region_km)
        throw ConfigError("sim: requires 0 < sample_km <= region_km");
    if (rounds < 1) throw ConfigError("sim: rounds must be >= 1");
    return SimConfig{region_km, sample_km, rounds, seed, torus};
}

namespace {

inline double wrap_delta(double d, double period) {
    d = std::abs(d);
    return d > 0.5 * period ? period - d : d;
}

inline double squared_distance(const Point& a, const Point& b, bool torus,
                               double period) {
    double dx = a.x - b.x, dy = a.y - b.y;
    if (torus) {
        dx = wrap_delta(dx, period);
        dy = wrap_delta(dy, period);
    }
    return dx * dx + dy * dy;
}

// Uniform bucket grid for nearest-neighbor queries within one tier.
class PointGrid {
  public:
    PointGrid(const std::vector<Point>& pts, double region_km, bool torus)
        : pts_(pts), region_(region_km), torus_(torus) {
        const std::size_t n = pts.size();
        cells_per_axis_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
        cell_size_ = region_ / cells_per_axis_;
        buckets_.resize(static_cast<std::size_t>(cells_per_axis_) *
                        static_cast<std::size_t>(cells_per_axis_));
        for (std::size_t i = 0; i < n; ++i)
            buckets_[bucket_of(pts[i])].push_back(static_cast<int>(i));
    }

    // Index and squared distance of the nearest point; {-1, inf} when empty.
    std::pair<int, double> nearest(const Point& q) const {
        int best = -1;
        double best_d2 = std::numeric_limits<double>::infinity();
        if (pts_.empty()) return {best, best_d2};

        const int m = cells_per_axis_;
        const int qx = cell_coord(q.x);
        const int qy = cell_coord(q.y);
        const int max_ring = torus_ ? (m + 1) / 2 : m;

        for (int ring = 0; ring <= max_ring; ++ring) {
            // any cell in ring r is at least (r-1) * cell_size_ away
            if (best >= 0) {
                const double reach = (ring - 1) * cell_size_;
                if (reach > 0.0 && best_d2 <= reach * reach) break;
            }
            for (int dx = -ring; dx <= ring; ++dx) {
                for (int dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                    int cx = qx + dx, cy = qy + dy;
                    if (torus_) {
                        cx = ((cx % m) + m) % m;
                        cy = ((cy % m) + m) % m;
                    } else if (cx < 0 || cx >= m || cy < 0 || cy >= m) {
                        continue;
                    }
                    for (int idx : buckets_[static_cast<std::size_t>(cy) *
                                                static_cast<std::size_t>(m) +
                                            static_cast<std::size_t>(cx)]) {
                        const double d2 = squared_distance(
                            q, pts_[static_cast<std::size_t>(idx)], torus_, region_);
                        if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
                            best_d2 = d2;
                            best = idx;
                        }
                    }
                }
            }
        }
        return {best, best_d2};
    }

  private:
    int cell_coord(double v) const {
        const int c = static_cast<int>((v + 0.5 * region_) / cell_size_);
        return std::clamp(c, 0, cells_per_axis_ - 1);
    }
    std::size_t bucket_of(const Point& p) const {
        return static_cast<std::size_t>(cell_coord(p.y)) *
                   static_cast<std::size_t>(cells_per_axis_) +
               static_cast<std::size_t>(cell_coord(p.x));
    }

    const std::vector<Point>& pts_;
    double region_;
    bool torus_;
    int cells_per_axis_ = 1;
    double cell_size_ = 1.0;
    std::vector<std::vector<int>> buckets_;
};

}  // namespace

Realization generate_realization(const NetworkConfig& config, const SimConfig& sim,
                                 int round_index) {
    Realization real;
    real.round_index = round_index;
    real.region_km = sim.region_km;
    real.sample_km = sim.sample_km;
    real.torus = sim.torus;
    real.rng = PhiloxRng(sim.seed, static_cast<std::uint64_t>(round_index));

    const double area = sim.region_km * sim.region_km;
    const double half = 0.5 * sim.region_km;

    const int tiers = static_cast<int>(config.tiers.size());
    real.bs.resize(static_cast<std::size_t>(tiers));
    for (int k = 0; k < tiers; ++k) {
        const std::int64_t count = poisson(real.rng, config.lambda(k) * area);
        auto& pts = real.bs[static_cast<std::size_t>(k)];
        pts.resize(static_cast<std::size_t>(count));
        for (auto& p : pts) {
            p.x = uniform_range(real.rng, -half, half);
            p.y = uniform_range(real.rng, -half, half);
        }
    }

    const std::int64_t ue_count = poisson(real.rng, config.ue_density_per_km2 * area);
    real.ue.resize(static_cast<std::size_t>(ue_count));
    for (auto& p : real.ue) {
        p.x = uniform_range(real.rng, -half, half);
        p.y = uniform_range(real.rng, -half, half);
    }
    return real;
}

void associate(Realization& real, const NetworkConfig& config, const BiasVector& bias) {
    const int tiers = static_cast<int>(real.bs.size());
    const double gamma = config.pathloss_exponent;

    // Within a tier the biased power is monotone in distance, so the tier's
    // best candidate is its nearest BS; the argmax then compares K candidates.
    std::vector<double> weight(static_cast<std::size_t>(tiers));
    double weight_sum = 0.0;
    std::vector<PointGrid> grids;
    grids.reserve(static_cast<std::size_t>(tiers));
    bool any_bs = false;
    for (int k = 0; k < tiers; ++k) {
        weight[static_cast<std::size_t>(k)] = bias[k] * config.power_watts(k);
        weight_sum += weight[static_cast<std::size_t>(k)];
        grids.emplace_back(real.bs[static_cast<std::size_t>(k)], real.region_km,
                           real.torus);
        if (weight[static_cast<std::size_t>(k)] > 0.0 &&
            !real.bs[static_cast<std::size_t>(k)].empty())
            any_bs = true;
    }
    if (!(weight_sum > 0.0)) throw NumericError("associate: all bias values are zero");
    if (!any_bs) throw NumericError("associate: no base station with positive bias");

    const std::size_t n_ue = real.ue.size();
    real.serving_tier.assign(n_ue, -1);
    real.serving_index.assign(n_ue, -1);
    real.serving_distance_km.assign(n_ue, 0.0);
    real.load.resize(static_cast<std::size_t>(tiers));
    for (int k = 0; k < tiers; ++k)
        real.load[static_cast<std::size_t>(k)]
            .assign(real.bs[static_cast<std::size_t>(k)].size(), 0);

    for (std::size_t u = 0; u < n_ue; ++u) {
        int best_tier = -1, best_idx = -1;
        double best_score = -1.0, best_d2 = std::numeric_limits<double>::infinity();
        for (int k = 0; k < tiers; ++k) {
            if (weight[static_cast<std::size_t>(k)] <= 0.0) continue;
            const auto [idx, d2] = grids[static_cast<std::size_t>(k)].nearest(real.ue[u]);
            if (idx < 0) continue;
            const double score =
                weight[static_cast<std::size_t>(k)] * std::pow(d2, -0.5 * gamma);
            if (score > best_score ||
                (score == best_score && (d2 < best_d2 || (d2 == best_d2 && k < best_tier)))) {
                best_score = score;
                best_tier = k;
                best_idx = idx;
                best_d2 = d2;
            }
        }
        real.serving_tier[u] = best_tier;
        real.serving_index[u] = best_idx;
        real.serving_distance_km[u] = std::sqrt(best_d2);
        ++real.load[static_cast<std::size_t>(best_tier)][static_cast<std::size_t>(best_idx)];
    }
}

RoundStats evaluate_round(Realization& real, const NetworkConfig& config,
                          const SpectrumAlloc& eta, std::vector<UeSample>* samples) {
    const int tiers = static_cast<int>(real.bs.size());
    const double gamma = config.pathloss_exponent;
    const double t = config.sir_threshold;
    const double rate_scale = std::log2(1.0 + t);
    const double half_sample = 0.5 * real.sample_km;

    RoundStats rs;
    rs.coverage_by_tier.assign(static_cast<std::size_t>(tiers), 0.0);
    rs.assoc_share_by_tier.assign(static_cast<std::size_t>(tiers), 0.0);
    rs.mean_load_by_tier.assign(static_cast<std::size_t>(tiers), 0.0);
    std::vector<int> covered(static_cast<std::size_t>(tiers), 0);
    std::vector<int> count(static_cast<std::size_t>(tiers), 0);

    double rate_sum = 0.0;
    for (std::size_t u = 0; u < real.ue.size(); ++u) {
        const Point& pos = real.ue[u];
        if (std::abs(pos.x) > half_sample || std::abs(pos.y) > half_sample) continue;

        const int k = real.serving_tier[u];
        const int serving = real.serving_index[u];
        const auto& cell = real.bs[static_cast<std::size_t>(k)];

        // transmit power and the pathloss constant cancel: interference is
        // same-tier only (disjoint spectrum)
        const double d_serv = std::max(real.serving_distance_km[u], 1e-12);
        const double fade = exponential_unit(real.rng);
        const double signal = fade * std::pow(d_serv, -gamma);

        double interference = 0.0;
        for (std::size_t b = 0; b < cell.size(); ++b) {
            if (b == static_cast<std::size_t>(serving)) continue;
            const double h = exponential_unit(real.rng);
            const double d2 = squared_distance(pos, cell[b], real.torus, real.region_km);
            interference +=
                gamma == 4.0 ? h / (d2 * d2) : h * std::pow(d2, -0.5 * gamma);
        }

        const bool is_covered = signal >= t * interference;
        const int n_serving = real.load[static_cast<std::size_t>(k)][static_cast<std::size_t>(serving)];
        const double rate =
            is_covered ? eta[k] * config.bandwidth_hz / n_serving * rate_scale : 0.0;

        rate_sum += rate;
        ++rs.sampled_ues;
        ++count[static_cast<std::size_t>(k)];
        if (is_covered) ++covered[static_cast<std::size_t>(k)];
        if (samples)
            samples->push_back(UeSample{real.round_index, k, d_serv, fade,
                                        interference > 0.0
                                            ? signal / interference
                                            : std::numeric_limits<double>::infinity(),
                                        rate, is_covered});
    }

    rs.mean_rate_bps = rs.sampled_ues > 0 ? rate_sum / rs.sampled_ues : 0.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < tiers; ++k) {
        rs.coverage_by_tier[static_cast<std::size_t>(k)] =
            count[static_cast<std::size_t>(k)] > 0
                ? static_cast<double>(covered[static_cast<std::size_t>(k)]) /
                      count[static_cast<std::size_t>(k)]
                : nan;
        rs.assoc_share_by_tier[static_cast<std::size_t>(k)] =
            rs.sampled_ues > 0
                ? static_cast<double>(count[static_cast<std::size_t>(k)]) / rs.sampled_ues
                : nan;
        const std::size_t n_bs = real.bs[static_cast<std::size_t>(k)].size();
        if (n_bs == 0) {
            rs.mean_load_by_tier[static_cast<std::size_t>(k)] = nan;
        } else {
            long total = 0;
            for (int l : real.load[static_cast<std::size_t>(k)]) total += l;
            rs.mean_load_by_tier[static_cast<std::size_t>(k)] =
                static_cast<double>(total) / static_cast<double>(n_bs);
        }
    }
    return rs;
}

namespace {

RoundStats simulate_one_round(const NetworkConfig& config, const SimConfig& sim,
                              const SpectrumAlloc& eta, const BiasVector& bias,
                              int round, std::vector<UeSample>* samples) {
    Realization real = generate_realization(config, sim, round);
    associate(real, config, bias);
    return evaluate_round(real, config, eta, samples);
}

// mean and 95% CI half-width over the non-NaN entries
void mean_ci(const std::vector<double>& values, double& mean, double& ci) {
    double sum = 0.0;
    int n = 0;
    for (double v : values)
        if (!std::isnan(v)) {
            sum += v;
            ++n;
        }
    if (n == 0) {
        mean = ci = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    mean = sum / n;
    if (n < 2) {
        ci = 0.0;
        return;
    }
    double ss = 0.0;
    for (double v : values)
        if (!std::isnan(v)) ss += (v - mean) * (v - mean);
    ci = 1.959963985 * std::sqrt(ss / (n - 1) / n);
}

SimOutcome aggregate(const NetworkConfig& config,
                     std::vector<RoundStats> rounds,
                     std::vector<std::vector<UeSample>> samples) {
    const int tiers = config.num_tiers();
    const int r = static_cast<int>(rounds.size());

    SimOutcome out;
    out.rounds_used = r;

    std::vector<double> col(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        col[static_cast<std::size_t>(i)] =
            rounds[static_cast<std::size_t>(i)].sampled_ues > 0
                ? rounds[static_cast<std::size_t>(i)].mean_rate_bps
                : std::numeric_limits<double>::quiet_NaN();
    mean_ci(col, out.mean_rate_bps, out.mean_rate_ci95_bps);

    out.coverage_by_tier.resize(static_cast<std::size_t>(tiers));
    out.coverage_ci95_by_tier.resize(static_cast<std::size_t>(tiers));
    out.assoc_share_by_tier.resize(static_cast<std::size_t>(tiers));
    out.mean_load_by_tier.resize(static_cast<std::size_t>(tiers));
    for (int k = 0; k < tiers; ++k) {
        for (int i = 0; i < r; ++i)
            col[static_cast<std::size_t>(i)] =
                rounds[static_cast<std::size_t>(i)].coverage_by_tier[static_cast<std::size_t>(k)];
        mean_ci(col, out.coverage_by_tier[static_cast<std::size_t>(k)],
                out.coverage_ci95_by_tier[static_cast<std::size_t>(k)]);

        double dummy_ci = 0.0;
        for (int i = 0; i < r; ++i)
            col[static_cast<std::size_t>(i)] =
                rounds[static_cast<std::size_t>(i)].assoc_share_by_tier[static_cast<std::size_t>(k)];
        mean_ci(col, out.assoc_share_by_tier[static_cast<std::size_t>(k)], dummy_ci);

        for (int i = 0; i < r; ++i)
            col[static_cast<std::size_t>(i)] =
                rounds[static_cast<std::size_t>(i)].mean_load_by_tier[static_cast<std::size_t>(k)];
        mean_ci(col, out.mean_load_by_tier[static_cast<std::size_t>(k)], dummy_ci);
    }

    // ordered reduction over round indices keeps the dump deterministic
    for (auto& s : samples)
        out.samples.insert(out.samples.end(), s.begin(), s.end());
    out.rounds = std::move(rounds);
    return out;
}

}  // namespace

SimOutcome run_monte_carlo(const NetworkConfig& config, const SimConfig& sim,
                           const SpectrumAlloc& eta, const BiasVector& bias,
                           const MonteCarloOptions& opts) {
    const int r = sim.rounds;
    std::vector<RoundStats> rounds(static_cast<std::size_t>(r));
    std::vector<std::vector<UeSample>> samples(
        opts.collect_samples ? static_cast<std::size_t>(r) : 0);

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < r; ++i)
        rounds[static_cast<std::size_t>(i)] = simulate_one_round(
            config, sim, eta, bias, i,
            opts.collect_samples ? &samples[static_cast<std::size_t>(i)] : nullptr);

    return aggregate(config, std::move(rounds), std::move(samples));
}

SimOutcome run_monte_carlo_reference(const NetworkConfig& config, const SimConfig& sim,
                                     const SpectrumAlloc& eta, const BiasVector& bias,
                                     const MonteCarloOptions& opts) {
    const int r = sim.rounds;
    std::vector<RoundStats> rounds(static_cast<std::size_t>(r));
    std::vector<std::vector<UeSample>> samples(
        opts.collect_samples ? static_cast<std::size_t>(r) : 0);

    for (int i = 0; i < r; ++i)
        rounds[static_cast<std::size_t>(i)] = simulate_one_round(
            config, sim, eta, bias, i,
            opts.collect_samples ? &samples[static_cast<std::size_t>(i)] : nullptr);

    return aggregate(config, std::move(rounds), std::move(samples));
}

}  // namespace hetnet
