#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "tbma/config.hpp"

namespace tbma {

enum class DetectionMode { edge, cloud };

const char* to_string(DetectionMode mode);

/// Joint error frequency over `trials` independent runs of L intervals.
struct ErrorProbEstimate {
  int L = 0;
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
};

/// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t trials, double z = 1.959963984540054);

/// Truth vector for `trial`, drawn from the joint prior on its own stream.
HypothesisVector draw_truth(const SystemConfig& config, std::uint64_t seed, std::uint64_t trial);

/// Monte Carlo estimate of Pr[any cell decided wrong]. Each trial draws
/// the truth from the prior. Output depends only on (config, L, trials,
/// mode, seed), never on `threads`.
ErrorProbEstimate estimate_error_prob(const SystemConfig& config, int L, std::int64_t trials,
                                      DetectionMode mode, std::uint64_t seed, unsigned threads = 1);

struct ErrorRatePoint {
  double L = 0.0;
  double p_hat = 0.0;
  std::optional<std::int64_t> errors;  // points with fewer than 10 are dropped
};

ErrorRatePoint to_rate_point(const ErrorProbEstimate& estimate);

/// Least-squares slope of -log(p_hat) against L. Requires at least three
/// usable points (p_hat in (0, 1), >= 10 error events when known).
double fit_exponent(std::span<const ErrorRatePoint> points);

/// Fraction of trials in which the surrogate edge detector and the exact
/// mixture-likelihood detector agree. K = 1 only.
double oracle_agreement_rate(const SystemConfig& config, int L, std::int64_t trials, std::uint64_t seed,
                             int n_max = -1);

}  // namespace tbma
