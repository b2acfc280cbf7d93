#pragma once

#include <Eigen/Dense>

#include "tbma/config.hpp"

namespace tbma {

/// log-density of independent field-Gaussian entries y(m) ~ N(mean(m), var(m)).
/// In complex mode the entries are circularly symmetric with total variance var(m).
class DiagonalGaussianDensity {
 public:
  DiagonalGaussianDensity(Eigen::VectorXd mean, const Eigen::VectorXd& variance, SignalField field);

  double log_density(const Eigen::VectorXcd& y) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::VectorXd inv_var_;
  double log_norm_ = 0.0;
  SignalField field_;
};

/// log-density of a field-Gaussian vector with real mean and real symmetric
/// covariance.
class GaussianDensity {
 public:
  GaussianDensity(Eigen::VectorXd mean, const Eigen::MatrixXd& cov, SignalField field);

  double log_density(const Eigen::VectorXcd& y) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double log_norm_ = 0.0;
  SignalField field_;
};

/// log N(y; mean, var) for one scalar entry in the given field.
double scalar_log_density(std::complex<double> y, double mean, double var, SignalField field);

}  // namespace tbma
