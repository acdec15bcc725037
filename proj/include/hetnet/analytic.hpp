#pragma once

// Closed-form quantities of the stochastic-geometry downlink model: the system
// constant C, per-tier rate kernels, coverage probability, the A<->B bias
// mapping, and the network-wide rate objectives.

#include "hetnet/types.hpp"

namespace hetnet {

/// System constant C = T^(2/gamma) * integral_{T^(-2/gamma)}^inf dt/(1+t^(gamma/2)),
/// a function of the pathloss exponent and the SIR threshold only. Computed by
/// adaptive quadrature (abs tol 1e-10) after mapping the tail onto a finite
/// interval with u = 1/t. Rejects gamma <= 2 (the integral diverges).
double constant_c(double gamma, double sir_threshold);

/// Coverage probability of a UE on a tier with association probability a_k:
/// 1/(1 + C a_k). The empty-tier limit a_k = 0 returns 1 (continuous extension).
double coverage_probability(double assoc_k, double c);

/// Conditional coverage probability at serving distance d (km):
/// exp(-pi lambda_k C d^2).
double conditional_coverage(double distance_km, double lambda_k, double c);

/// Serving-distance density f_k(d) = (2 pi lambda_k / A_k) d exp(-pi d^2 lambda_k / A_k).
double serving_distance_pdf(double distance_km, double lambda_k, double assoc_k);

/// Serving-distance CDF 1 - exp(-pi d^2 lambda_k / A_k).
double serving_distance_cdf(double distance_km, double lambda_k, double assoc_k);

/// Per-tier rate kernel M_k(A) = 1/((A mu/lambda + 1)(1/A + C)), continuously
/// extended with M_k(0) = 0.
double rate_kernel_m(double assoc_k, double lambda_k, double mu, double c);

/// Derivative of M_k in A: lambda (lambda - C mu A^2) / ((mu A + lambda)^2 (1 + C A)^2).
/// Vanishes exactly at the peak a_k = sqrt(lambda/(mu C)).
double rate_kernel_m_deriv(double assoc_k, double lambda_k, double mu, double c);

/// Dense-scenario approximation Mbar_k(A) = 1/((A mu/lambda)(1/A + C)).
/// The two A factors cancel to lambda/(mu (1 + C A)), which is the form
/// evaluated here. Rejects A = 0 (the approximation divides by A).
double rate_kernel_mbar(double assoc_k, double lambda_k, double mu, double c);

/// Peak location a_k = sqrt(lambda_k / (mu C)) of M_k; also the per-tier
/// density threshold.
double kernel_peak(double lambda_k, double mu, double c);

/// Average per-UE data rate F(eta, A) = sum_k eta_k W log2(1+T) M_k(A_k), in bit/s.
double objective_f(const NetworkConfig& config, const SpectrumAlloc& eta,
                   const AssocVector& assoc, double c);
double objective_f(const NetworkConfig& config, const SpectrumAlloc& eta,
                   const AssocVector& assoc);

/// Upper-bounding objective F'(eta, A) = sum_k eta_k W log2(1+T) Mbar_k(A_k).
/// The W log2(1+T) factor is included so F and F' share rate units.
double objective_f_approx(const NetworkConfig& config, const SpectrumAlloc& eta,
                          const AssocVector& assoc, double c);
double objective_f_approx(const NetworkConfig& config, const SpectrumAlloc& eta,
                          const AssocVector& assoc);

/// Association probabilities induced by bias values:
/// A_k = lambda_k (P_k B_k)^(2/gamma) / sum_j lambda_j (P_j B_j)^(2/gamma).
/// Throws NumericError on an all-zero bias vector.
AssocVector assoc_from_bias(const NetworkConfig& config, const BiasVector& bias);

/// Inverse mapping B_k = P_k^(-1) (A_k/lambda_k)^(gamma/2), normalized to sum 1.
/// Zero association entries map to zero bias.
BiasVector bias_from_assoc(const NetworkConfig& config, const AssocVector& assoc);

}  // namespace hetnet
