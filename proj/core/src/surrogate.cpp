#include "tbma/surrogate.hpp"

#include <string>

#include "tbma/errors.hpp"

namespace tbma {

namespace {

void check_cell_and_hypothesis(const SystemConfig& config, int cell, const HypothesisVector& k) {
  if (cell < 0 || cell >= config.K) {
    throw ConfigError("cell index " + std::to_string(cell) + " out of range");
  }
  if (k.size() != config.K) throw ConfigError("hypothesis vector length must equal K");
}

// Second moment of one device's gain: E|H|^2 or just the variance.
double gain_power(const SystemConfig& config, double mean, double variance) {
  return config.variance_model == VarianceModel::compound_poisson ? variance + mean * mean
                                                                  : variance;
}

}  // namespace

Eigen::VectorXd edge_mean(const SystemConfig& config, int cell, const HypothesisVector& k) {
  check_cell_and_hypothesis(config, cell, k);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(config.M);
  for (int c = 0; c < config.K; ++c) {
    const auto& p = config.distribution(c, k[c]);
    const double gain = (c == cell) ? config.mu_H : config.mu_G;
    for (int m = 0; m < config.M; ++m) mean(m) += gain * config.lambda * p[static_cast<std::size_t>(m)];
  }
  return mean;
}

Eigen::VectorXd edge_variance(const SystemConfig& config, int cell, const HypothesisVector& k) {
  check_cell_and_hypothesis(config, cell, k);
  const double in_cell = gain_power(config, config.mu_H, config.sigma2_H);
  const double cross = gain_power(config, config.mu_G, config.sigma2_G);
  Eigen::VectorXd var = Eigen::VectorXd::Constant(config.M, config.noise_variance());
  for (int c = 0; c < config.K; ++c) {
    // Interferers contribute through their own distribution p^{c'}_{k_{c'}}.
    const auto& p = config.distribution(c, k[c]);
    const double power = (c == cell) ? in_cell : cross;
    for (int m = 0; m < config.M; ++m) var(m) += power * config.lambda * p[static_cast<std::size_t>(m)];
  }
  return var;
}

GaussianSurrogate edge_surrogate(const SystemConfig& config, int cell, const HypothesisVector& k) {
  GaussianSurrogate g;
  g.mean = edge_mean(config, cell, k);
  g.cov = edge_variance(config, cell, k).asDiagonal();
  g.diagonal_only = true;
  return g;
}

GaussianSurrogate cloud_surrogate(const SystemConfig& config, const HypothesisVector& k,
                                  std::span<const double> sigma2_q) {
  if (config.K != 2) {
    throw UnsupportedConfiguration("cloud surrogate is only defined for K = 2 cells");
  }
  if (k.size() != config.K) throw ConfigError("hypothesis vector length must equal K");
  if (static_cast<int>(sigma2_q.size()) != config.K) {
    throw ConfigError("need one quantization noise variance per EN");
  }
  for (double s : sigma2_q) {
    if (!(s >= 0.0)) throw ConfigError("quantization noise variance must be nonnegative");
  }

  const int M = config.M;
  GaussianSurrogate g;
  g.mean.resize(2 * M);
  g.cov = Eigen::MatrixXd::Zero(2 * M, 2 * M);
  for (int c = 0; c < 2; ++c) {
    g.mean.segment(c * M, M) = edge_mean(config, c, k);
    const Eigen::VectorXd var = edge_variance(config, c, k);
    for (int m = 0; m < M; ++m) {
      g.cov(c * M + m, c * M + m) = var(m) + sigma2_q[static_cast<std::size_t>(c)];
    }
  }

  const auto& p1 = config.distribution(0, k[0]);
  const auto& p2 = config.distribution(1, k[1]);
  const double scale = config.lambda * config.mu_H * config.mu_G;
  for (int m = 0; m < M; ++m) {
    const double a = p1[static_cast<std::size_t>(m)];
    const double b = p2[static_cast<std::size_t>(m)];
    const double cross = config.cross_covariance == CrossCovarianceModel::binomial
                             ? scale * (a * (1.0 - a) + b * (1.0 - b))
                             : scale * (a + b);
    g.cov(m, M + m) = cross;
    g.cov(M + m, m) = cross;
  }
  g.diagonal_only = false;
  return g;
}

}  // namespace tbma
