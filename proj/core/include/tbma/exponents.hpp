#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tbma/config.hpp"

namespace tbma {

/// Result of an error-exponent lower bound evaluation.
///
/// For edge mode, `argmin_first` / `argmin_second` are the full hypothesis
/// vectors with the deciding cell at theta_0 / theta_1 and the minimizing
/// interferer pattern elsewhere; `argmin_cell` names that cell and
/// `per_cell` holds E^c. For cloud mode they are the pair (k, k') and
/// `sigma2_q` holds the per-EN quantization noise.
struct ExponentReport {
  double exponent = 0.0;  // nats
  HypothesisVector argmin_first;
  HypothesisVector argmin_second;
  std::optional<int> argmin_cell;
  double alpha_star = 0.5;
  std::vector<double> per_cell;
  std::vector<double> sigma2_q;
};

/// E^edge = min_c min_{interferers} C(f(theta_0), f(theta_1)).
ExponentReport edge_exponent(const SystemConfig& config);

/// E^cloud = min_k min_{k' != k} C(f_k, f_k') on the quantized two-cell
/// surrogates. Requires K = 2 and C > 0.
ExponentReport cloud_exponent(const SystemConfig& config);

/// Same as cloud_exponent but with caller-supplied quantization noise.
ExponentReport cloud_exponent(const SystemConfig& config, std::span<const double> sigma2_q);

struct InterferenceProbeRow {
  double sigma2_G = 0.0;
  double edge = 0.0;
  double cloud = 0.0;
};

/// Evaluates both exponents along an increasing grid of inter-cell channel
/// variances.
std::vector<InterferenceProbeRow> interference_probe(const SystemConfig& config,
                                                     std::span<const double> sigma2_G_grid);

}  // namespace tbma
