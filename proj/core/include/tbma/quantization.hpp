#pragma once

#include <span>

#include <Eigen/Dense>

#include "tbma/config.hpp"

namespace tbma {

struct QuantizationSolution {
  double sigma2_q = 0.0;
  double residual = 0.0;  // rate(sigma2_q) - M*C, in bits
  int iterations = 0;
};

/// Fronthaul rate in bits of the Gaussian test channel,
/// 1/2 * sum_m log2(1 + S(m) / sigma2_q).
double test_channel_rate(std::span<const double> inner_variance, double sigma2_q);

/// Solves M*C = test_channel_rate(S, sigma2_q) for sigma2_q by bisection
/// on log(sigma2_q). The bracket [S_min, S_max] / (2^{2C} - 1) is exact
/// because every term is monotone in sigma2_q.
QuantizationSolution solve_test_channel(std::span<const double> inner_variance, double capacity);

/// Prior-averaged per-preamble variance S_c(m) = sum_k Pr(k) Sigma^c_k(m,m).
Eigen::VectorXd prior_averaged_variance(const SystemConfig& config, int cell);

/// Quantization noise level for EN `cell` under the fronthaul constraint.
/// Throws ConfigError when C = 0 (infinite quantization noise).
QuantizationSolution solve_quantization_noise(const SystemConfig& config, int cell);

}  // namespace tbma
