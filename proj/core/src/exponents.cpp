#include "tbma/exponents.hpp"

#include <limits>

#include "tbma/chernoff.hpp"
#include "tbma/errors.hpp"
#include "tbma/quantization.hpp"
#include "tbma/surrogate.hpp"

namespace tbma {

ExponentReport edge_exponent(const SystemConfig& config) {
  require_valid(config);
  ExponentReport report;
  report.exponent = std::numeric_limits<double>::infinity();
  report.per_cell.assign(static_cast<std::size_t>(config.K), 0.0);

  const auto n = hypothesis_count(config.K);
  for (int c = 0; c < config.K; ++c) {
    double cell_min = std::numeric_limits<double>::infinity();
    // Lexicographic sweep over full vectors with k_c = 0 visits every
    // interferer pattern exactly once, in order.
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = HypothesisVector::from_index(config.K, i);
      if (k[c] != 0) continue;
      const auto k1 = k.with_bit(c, 1);
      const auto result = chernoff_information(edge_surrogate(config, c, k), edge_surrogate(config, c, k1));
      if (result.value < cell_min) cell_min = result.value;
      if (result.value < report.exponent) {
        report.exponent = result.value;
        report.argmin_first = k;
        report.argmin_second = k1;
        report.argmin_cell = c;
        report.alpha_star = result.alpha_star;
      }
    }
    report.per_cell[static_cast<std::size_t>(c)] = cell_min;
  }
  return report;
}

ExponentReport cloud_exponent(const SystemConfig& config, std::span<const double> sigma2_q) {
  require_valid(config);
  if (config.K != 2) {
    throw UnsupportedConfiguration("cloud exponent is only defined for K = 2 cells");
  }
  const auto n = hypothesis_count(config.K);
  std::vector<GaussianSurrogate> surrogates;
  surrogates.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    surrogates.push_back(cloud_surrogate(config, HypothesisVector::from_index(config.K, i), sigma2_q));
  }

  ExponentReport report;
  report.exponent = std::numeric_limits<double>::infinity();
  report.sigma2_q.assign(sigma2_q.begin(), sigma2_q.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto result = chernoff_information(surrogates[i], surrogates[j]);
      if (result.value < report.exponent) {
        report.exponent = result.value;
        report.argmin_first = HypothesisVector::from_index(config.K, i);
        report.argmin_second = HypothesisVector::from_index(config.K, j);
        report.alpha_star = result.alpha_star;
      }
    }
  }
  return report;
}

ExponentReport cloud_exponent(const SystemConfig& config) {
  require_valid(config);
  if (config.K != 2) {
    throw UnsupportedConfiguration("cloud exponent is only defined for K = 2 cells");
  }
  std::vector<double> sigma2_q;
  for (int c = 0; c < config.K; ++c) sigma2_q.push_back(solve_quantization_noise(config, c).sigma2_q);
  return cloud_exponent(config, sigma2_q);
}

std::vector<InterferenceProbeRow> interference_probe(const SystemConfig& config,
                                                     std::span<const double> sigma2_G_grid) {
  if (sigma2_G_grid.empty()) throw ConfigError("empty sweep grid");
  for (std::size_t i = 0; i < sigma2_G_grid.size(); ++i) {
    if (!(sigma2_G_grid[i] >= 0.0)) throw ConfigError("sigma2_G grid must be nonnegative");
    if (i > 0 && !(sigma2_G_grid[i] > sigma2_G_grid[i - 1])) {
      throw ConfigError("sigma2_G grid must be strictly increasing");
    }
  }
  std::vector<InterferenceProbeRow> rows;
  rows.reserve(sigma2_G_grid.size());
  for (double s : sigma2_G_grid) {
    SystemConfig cfg = config;
    cfg.sigma2_G = s;
    rows.push_back({s, edge_exponent(cfg).exponent, cloud_exponent(cfg).exponent});
  }
  return rows;
}

}  // namespace tbma
