#include "tbma/gaussian_density.hpp"

#include <cmath>
#include <numbers>

#include "tbma/chernoff.hpp"
#include "tbma/errors.hpp"

namespace tbma {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);
const double kLogPi = std::log(std::numbers::pi);

}  // namespace

double scalar_log_density(std::complex<double> y, double mean, double var, SignalField field) {
  if (field == SignalField::real) {
    const double r = y.real() - mean;
    return -0.5 * (kLog2Pi + std::log(var) + r * r / var);
  }
  return -(kLogPi + std::log(var) + std::norm(y - mean) / var);
}

DiagonalGaussianDensity::DiagonalGaussianDensity(Eigen::VectorXd mean, const Eigen::VectorXd& variance,
                                                 SignalField field)
    : mean_(std::move(mean)), field_(field) {
  if (mean_.size() != variance.size()) throw ConfigError("mean/variance size mismatch");
  if ((variance.array() <= 0.0).any()) throw NumericalError("variance must be positive");
  inv_var_ = variance.cwiseInverse();
  const double log_var_sum = variance.array().log().sum();
  const auto d = static_cast<double>(mean_.size());
  log_norm_ = field_ == SignalField::real ? -0.5 * (d * kLog2Pi + log_var_sum)
                                          : -(d * kLogPi + log_var_sum);
}

double DiagonalGaussianDensity::log_density(const Eigen::VectorXcd& y) const {
  if (y.size() != mean_.size()) throw ConfigError("observation dimension mismatch");
  double quad = 0.0;
  if (field_ == SignalField::real) {
    for (Eigen::Index m = 0; m < y.size(); ++m) {
      const double r = y(m).real() - mean_(m);
      quad += r * r * inv_var_(m);
    }
    return log_norm_ - 0.5 * quad;
  }
  for (Eigen::Index m = 0; m < y.size(); ++m) {
    quad += std::norm(y(m) - mean_(m)) * inv_var_(m);
  }
  return log_norm_ - quad;
}

GaussianDensity::GaussianDensity(Eigen::VectorXd mean, const Eigen::MatrixXd& cov, SignalField field)
    : mean_(std::move(mean)), llt_(cov), field_(field) {
  if (cov.rows() != mean_.size() || cov.cols() != mean_.size()) {
    throw ConfigError("mean/covariance size mismatch");
  }
  const double logdet = log_det_spd(cov, "surrogate covariance");
  const auto d = static_cast<double>(mean_.size());
  log_norm_ = field_ == SignalField::real ? -0.5 * (d * kLog2Pi + logdet) : -(d * kLogPi + logdet);
}

double GaussianDensity::log_density(const Eigen::VectorXcd& y) const {
  if (y.size() != mean_.size()) throw ConfigError("observation dimension mismatch");
  const Eigen::VectorXd re = y.real() - mean_;
  if (field_ == SignalField::real) {
    return log_norm_ - 0.5 * re.dot(llt_.solve(re));
  }
  const Eigen::VectorXd im = y.imag();
  return log_norm_ - re.dot(llt_.solve(re)) - im.dot(llt_.solve(im));
}

}  // namespace tbma
