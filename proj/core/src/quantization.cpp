#include "tbma/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tbma/errors.hpp"
#include "tbma/surrogate.hpp"

namespace tbma {

namespace {

constexpr double kResidualTolerance = 1e-12;
constexpr int kMaxIterations = 400;

// log(1 + e^x) without overflow.
double softplus(double x) { return x > 30.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// Rate in bits as a function of t = log(sigma2_q).
double rate_at_log(std::span<const double> s, double t) {
  double nats = 0.0;
  for (double v : s) nats += softplus(std::log(v) - t);
  return 0.5 * nats / std::numbers::ln2;
}

// log(2^{2C} - 1)
double log_gain_minus_one(double capacity) {
  const double x = 2.0 * capacity * std::numbers::ln2;
  return x + std::log(-std::expm1(-x));
}

}  // namespace

double test_channel_rate(std::span<const double> inner_variance, double sigma2_q) {
  if (!(sigma2_q > 0.0)) throw ConfigError("sigma2_q must be positive");
  return rate_at_log(inner_variance, std::log(sigma2_q));
}

QuantizationSolution solve_test_channel(std::span<const double> inner_variance, double capacity) {
  if (inner_variance.empty()) throw ConfigError("empty variance vector");
  for (double v : inner_variance) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("inner variances must be positive");
  }
  if (!(capacity > 0.0)) {
    throw ConfigError("infinite quantization noise; cloud mode unavailable");
  }
  if (!std::isfinite(capacity)) return {0.0, 0.0, 0};

  const double target = static_cast<double>(inner_variance.size()) * capacity;
  const auto [smin, smax] = std::minmax_element(inner_variance.begin(), inner_variance.end());
  const double shift = log_gain_minus_one(capacity);
  double lo = std::log(*smin) - shift;  // rate(lo) >= target
  double hi = std::log(*smax) - shift;  // rate(hi) <= target

  QuantizationSolution best{std::exp(lo), rate_at_log(inner_variance, lo) - target, 0};
  if (std::abs(rate_at_log(inner_variance, hi) - target) < std::abs(best.residual)) {
    best = {std::exp(hi), rate_at_log(inner_variance, hi) - target, 0};
  }

  int it = 0;
  while (std::abs(best.residual) >= kResidualTolerance && it < kMaxIterations) {
    ++it;
    const double mid = 0.5 * (lo + hi);
    const double r = rate_at_log(inner_variance, mid) - target;
    if (std::abs(r) < std::abs(best.residual)) best = {std::exp(mid), r, it};
    if (r > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 0.0) break;
  }
  best.iterations = it;
  if (!(std::abs(best.residual) < 1e-9)) {
    throw NumericalError("quantization noise solver did not converge");
  }
  return best;
}

Eigen::VectorXd prior_averaged_variance(const SystemConfig& config, int cell) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(config.M);
  const auto n = hypothesis_count(config.K);
  for (std::size_t i = 0; i < n; ++i) {
    const double pr = config.prior.table.at(i);
    if (pr == 0.0) continue;
    s += pr * edge_variance(config, cell, HypothesisVector::from_index(config.K, i));
  }
  return s;
}

QuantizationSolution solve_quantization_noise(const SystemConfig& config, int cell) {
  require_valid(config);
  if (!(config.C > 0.0)) throw ConfigError("infinite quantization noise; cloud mode unavailable");
  const Eigen::VectorXd s = prior_averaged_variance(config, cell);
  return solve_test_channel(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())),
                            config.C);
}

}  // namespace tbma
