#pragma once

#include <span>

#include <Eigen/Dense>

#include "tbma/config.hpp"

namespace tbma {

/// Gaussian approximation of a received-signal distribution under one
/// hypothesis vector.
struct GaussianSurrogate {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  bool diagonal_only = false;

  int dimension() const { return static_cast<int>(mean.size()); }
};

/// Per-preamble variance at EN `cell` under hypothesis `k` (no quantization).
Eigen::VectorXd edge_variance(const SystemConfig& config, int cell, const HypothesisVector& k);

/// Per-preamble mean at EN `cell` under hypothesis `k`.
Eigen::VectorXd edge_mean(const SystemConfig& config, int cell, const HypothesisVector& k);

/// M-dimensional diagonal surrogate of Y^c given the full hypothesis vector
/// `k` (k[cell] is the local QoI, the rest select the interferers'
/// distributions). `cell` is zero-based.
GaussianSurrogate edge_surrogate(const SystemConfig& config, int cell, const HypothesisVector& k);

/// 2M-dimensional surrogate of the stacked quantized signals at the cloud.
/// `sigma2_q` holds one quantization noise variance per EN. Only K = 2 is
/// defined; other K throw UnsupportedConfiguration.
GaussianSurrogate cloud_surrogate(const SystemConfig& config, const HypothesisVector& k,
                                  std::span<const double> sigma2_q);

}  // namespace tbma
