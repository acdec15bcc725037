#include "hetnet/analytic.hpp"

#include <cmath>

#include "hetnet/quadrature.hpp"

namespace hetnet {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double constant_c(double gamma, double sir_threshold) {
    if (!(gamma > 2.0))
        throw ConfigError("constant_c: gamma must exceed 2, the interference integral diverges");
    if (!(sir_threshold > 0.0))
        throw ConfigError("constant_c: SIR threshold must be positive");

    // Substituting u = 1/t maps the tail integral onto (0, T^(2/gamma)]:
    //   integral_{T^(-2/gamma)}^inf dt/(1+t^(gamma/2))
    //     = integral_0^{T^(2/gamma)} u^(gamma/2 - 2) / (1 + u^(gamma/2)) du,
    // which is endpoint-singular for gamma < 4. A second substitution
    // u = v^p with p = 4/(gamma - 2) turns it into
    //     p * integral_0^{U^(1/p)} v / (1 + v^(p gamma/2)) dv,
    // linear at the origin for every gamma > 2.
    const double upper = std::pow(sir_threshold, 2.0 / gamma);
    const double p = 4.0 / (gamma - 2.0);
    const double q_exp = p * 0.5 * gamma;
    const auto integrand = [q_exp](double v) {
        return v / (1.0 + std::pow(v, q_exp));
    };
    const QuadratureResult q =
        integrate_adaptive(integrand, 0.0, std::pow(upper, 1.0 / p), 1e-10);
    return upper * p * q.value;
}

double coverage_probability(double assoc_k, double c) {
    if (!(assoc_k >= 0.0) || !(assoc_k <= 1.0))
        throw NumericError("coverage_probability: association probability outside [0,1]");
    if (!(c >= 0.0)) throw NumericError("coverage_probability: C must be nonnegative");
    return 1.0 / (1.0 + c * assoc_k);  // a_k = 0 gives the empty-tier limit 1
}

double conditional_coverage(double distance_km, double lambda_k, double c) {
    return std::exp(-kPi * lambda_k * c * distance_km * distance_km);
}

double serving_distance_pdf(double distance_km, double lambda_k, double assoc_k) {
    const double rate = kPi * lambda_k / assoc_k;
    return 2.0 * rate * distance_km * std::exp(-rate * distance_km * distance_km);
}

double serving_distance_cdf(double distance_km, double lambda_k, double assoc_k) {
    const double rate = kPi * lambda_k / assoc_k;
    return -std::expm1(-rate * distance_km * distance_km);
}

double rate_kernel_m(double assoc_k, double lambda_k, double mu, double c) {
    if (!(assoc_k >= 0.0)) throw NumericError("rate_kernel_m: association must be nonnegative");
    if (assoc_k == 0.0) return 0.0;
    // 1/((A mu/lambda + 1)(1/A + C)) rewritten as lambda A / ((mu A + lambda)(1 + C A))
    return lambda_k * assoc_k /
           ((mu * assoc_k + lambda_k) * (1.0 + c * assoc_k));
}

double rate_kernel_m_deriv(double assoc_k, double lambda_k, double mu, double c) {
    if (!(assoc_k >= 0.0)) throw NumericError("rate_kernel_m_deriv: association must be nonnegative");
    const double p = mu * assoc_k + lambda_k;
    const double q = 1.0 + c * assoc_k;
    return lambda_k * (lambda_k - c * mu * assoc_k * assoc_k) / (p * p * q * q);
}

double rate_kernel_mbar(double assoc_k, double lambda_k, double mu, double c) {
    if (!(assoc_k > 0.0))
        throw NumericError("rate_kernel_mbar: approximation undefined at A = 0");
    return lambda_k / (mu * (1.0 + c * assoc_k));
}

double kernel_peak(double lambda_k, double mu, double c) {
    return std::sqrt(lambda_k / (mu * c));
}

namespace {

double rate_scale(const NetworkConfig& config) {
    return config.bandwidth_hz * std::log2(1.0 + config.sir_threshold);
}

void check_dims(const NetworkConfig& config, const SpectrumAlloc& eta,
                const AssocVector& assoc) {
    if (eta.size() != config.num_tiers() || assoc.size() != config.num_tiers())
        throw ConfigError("objective: eta/A dimension does not match tier count");
}

}  // namespace

double objective_f(const NetworkConfig& config, const SpectrumAlloc& eta,
                   const AssocVector& assoc, double c) {
    check_dims(config, eta, assoc);
    const double mu = config.ue_density_per_km2;
    double sum = 0.0;
    for (int k = 0; k < config.num_tiers(); ++k)
        sum += eta[k] * rate_kernel_m(assoc[k], config.lambda(k), mu, c);
    return rate_scale(config) * sum;
}

double objective_f(const NetworkConfig& config, const SpectrumAlloc& eta,
                   const AssocVector& assoc) {
    return objective_f(config, eta, assoc,
                       constant_c(config.pathloss_exponent, config.sir_threshold));
}

double objective_f_approx(const NetworkConfig& config, const SpectrumAlloc& eta,
                          const AssocVector& assoc, double c) {
    check_dims(config, eta, assoc);
    const double mu = config.ue_density_per_km2;
    double sum = 0.0;
    for (int k = 0; k < config.num_tiers(); ++k)
        sum += eta[k] * rate_kernel_mbar(assoc[k], config.lambda(k), mu, c);
    return rate_scale(config) * sum;
}

double objective_f_approx(const NetworkConfig& config, const SpectrumAlloc& eta,
                          const AssocVector& assoc) {
    return objective_f_approx(config, eta, assoc,
                              constant_c(config.pathloss_exponent, config.sir_threshold));
}

AssocVector assoc_from_bias(const NetworkConfig& config, const BiasVector& bias) {
    if (bias.size() != config.num_tiers())
        throw ConfigError("assoc_from_bias: bias dimension does not match tier count");
    const double exponent = 2.0 / config.pathloss_exponent;
    std::vector<double> weights(bias.b.size());
    double total = 0.0;
    for (int k = 0; k < config.num_tiers(); ++k) {
        const double w =
            config.lambda(k) * std::pow(config.power_watts(k) * bias[k], exponent);
        weights[static_cast<std::size_t>(k)] = w;
        total += w;
    }
    if (!(total > 0.0))
        throw NumericError("assoc_from_bias: all biased powers are zero");
    for (double& w : weights) w /= total;
    return AssocVector{std::move(weights)};
}

BiasVector bias_from_assoc(const NetworkConfig& config, const AssocVector& assoc) {
    if (assoc.size() != config.num_tiers())
        throw ConfigError("bias_from_assoc: association dimension does not match tier count");
    const double exponent = config.pathloss_exponent / 2.0;
    std::vector<double> weights(assoc.a.size());
    double total = 0.0;
    for (int k = 0; k < config.num_tiers(); ++k) {
        const double w =
            assoc[k] == 0.0
                ? 0.0
                : std::pow(assoc[k] / config.lambda(k), exponent) / config.power_watts(k);
        weights[static_cast<std::size_t>(k)] = w;
        total += w;
    }
    if (!(total > 0.0))
        throw NumericError("bias_from_assoc: association vector has no positive entry");
    for (double& w : weights) w /= total;
    return BiasVector{std::move(weights)};
}

}  // namespace hetnet
