#include "tbma/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tbma/errors.hpp"
#include "tbma/surrogate.hpp"

namespace tbma {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMaxCompositions = 1e6;

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Walks all compositions (n_1..n_M) of n, accumulating
// log Multinomial(counts; p) + sum_m table[m][n_m] into `terms`.
void enumerate_compositions(int m, int remaining, double acc, const std::vector<double>& log_p,
                            const std::vector<std::vector<double>>& table, std::vector<double>& terms) {
  const int M = static_cast<int>(log_p.size());
  if (m == M - 1) {
    const double lp = log_p[static_cast<std::size_t>(m)];
    if (remaining > 0 && lp == kNegInf) return;
    const double term = (remaining > 0 ? remaining * lp : 0.0) - std::lgamma(remaining + 1.0) +
                        table[static_cast<std::size_t>(m)][static_cast<std::size_t>(remaining)];
    terms.push_back(acc + term);
    return;
  }
  const double lp = log_p[static_cast<std::size_t>(m)];
  for (int k = 0; k <= remaining; ++k) {
    if (k > 0 && lp == kNegInf) break;
    const double term = (k > 0 ? k * lp : 0.0) - std::lgamma(k + 1.0) +
                        table[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
    enumerate_compositions(m + 1, remaining - k, acc + term, log_p, table, terms);
  }
}

}  // namespace

std::size_t argmax_lexicographic(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) return kNegInf;
  const double peak = *std::max_element(x.begin(), x.end());
  if (peak == kNegInf) return kNegInf;
  if (peak == std::numeric_limits<double>::infinity()) return peak;
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

EdgeMapDetector::EdgeMapDetector(const SystemConfig& config, int cell) : cell_(cell) {
  require_valid(config);
  if (cell < 0 || cell >= config.K) throw ConfigError("cell index out of range");
  const auto n = hypothesis_count(config.K);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = HypothesisVector::from_index(config.K, i);
    components_.push_back({k[cell], safe_log(config.prior.table[i]),
                           DiagonalGaussianDensity(edge_mean(config, cell, k),
                                                   edge_variance(config, cell, k), config.signal_field)});
  }
}

DetectionOutcome EdgeMapDetector::detect(std::span<const ReceivedBlock> blocks) const {
  const auto own = [this](const ReceivedBlock& b) { return b.cell == cell_; };
  if (std::none_of(blocks.begin(), blocks.end(), own)) {
    throw ConfigError("need at least one collection interval for this cell");
  }
  std::vector<double> terms[2];
  for (const auto& comp : components_) {
    double score = comp.log_prior;
    if (score != kNegInf) {
      for (const auto& b : blocks) {
        if (own(b)) score += comp.density.log_density(b.y);
      }
    }
    terms[comp.own_bit].push_back(score);
  }
  DetectionOutcome out;
  out.log_posteriors = {log_sum_exp(terms[0]), log_sum_exp(terms[1])};
  const auto bit = argmax_lexicographic(out.log_posteriors);
  out.estimate = HypothesisVector({static_cast<std::uint8_t>(bit)});
  return out;
}

DetectionOutcome edge_map_detect(std::span<const ReceivedBlock> blocks, const SystemConfig& config,
                                 int cell) {
  return EdgeMapDetector(config, cell).detect(blocks);
}

CloudMapDetector::CloudMapDetector(const SystemConfig& config, std::span<const double> sigma2_q)
    : cells_(config.K) {
  require_valid(config);
  if (config.K != 2) throw UnsupportedConfiguration("cloud detection is only defined for K = 2 cells");
  const auto n = hypothesis_count(config.K);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = HypothesisVector::from_index(config.K, i);
    const auto g = cloud_surrogate(config, k, sigma2_q);
    log_prior_.push_back(safe_log(config.prior.table[i]));
    densities_.emplace_back(g.mean, g.cov, config.signal_field);
  }
}

DetectionOutcome CloudMapDetector::detect(std::span<const Eigen::VectorXcd> stacked) const {
  if (stacked.empty()) throw ConfigError("need at least one collection interval");
  DetectionOutcome out;
  out.log_posteriors.resize(densities_.size());
  for (std::size_t i = 0; i < densities_.size(); ++i) {
    double score = log_prior_[i];
    if (score != kNegInf) {
      for (const auto& y : stacked) score += densities_[i].log_density(y);
    }
    out.log_posteriors[i] = score;
  }
  out.estimate = HypothesisVector::from_index(cells_, argmax_lexicographic(out.log_posteriors));
  return out;
}

DetectionOutcome cloud_map_detect(std::span<const Eigen::VectorXcd> stacked, const SystemConfig& config,
                                  std::span<const double> sigma2_q) {
  return CloudMapDetector(config, sigma2_q).detect(stacked);
}

int default_truncation(double lambda) {
  return static_cast<int>(std::ceil(lambda + 10.0 * std::sqrt(lambda) + 20.0));
}

double exact_small_lambda_likelihood(const ReceivedBlock& block, const SystemConfig& config, int bit,
                                     int n_max) {
  if (config.K != 1) throw UnsupportedConfiguration("exact likelihood is only defined for K = 1");
  if (n_max < 0) throw ConfigError("truncation must be nonnegative");
  if (block.y.size() != config.M) throw ConfigError("block length must equal M");
  const int M = config.M;
  if (std::exp(log_binomial(n_max + M - 1, M - 1)) > kMaxCompositions) {
    throw ConfigError("exact likelihood enumeration exceeds 1e6 terms; lower n_max or M");
  }

  const auto& p = config.distribution(0, bit);
  std::vector<double> log_p(p.size());
  std::transform(p.begin(), p.end(), log_p.begin(), safe_log);

  // table[m][n] = log N(y(m); n mu_H, n sigma2_H + 1/SNR)
  std::vector<std::vector<double>> table(static_cast<std::size_t>(M),
                                         std::vector<double>(static_cast<std::size_t>(n_max) + 1));
  for (int m = 0; m < M; ++m) {
    for (int n = 0; n <= n_max; ++n) {
      table[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] =
          scalar_log_density(block.y(m), n * config.mu_H, n * config.sigma2_H + config.noise_variance(),
                             config.signal_field);
    }
  }

  std::vector<double> per_n;
  std::vector<double> terms;
  const double log_lambda = std::log(config.lambda);
  for (int n = 0; n <= n_max; ++n) {
    terms.clear();
    enumerate_compositions(0, n, 0.0, log_p, table, terms);
    if (terms.empty()) continue;
    // Pois(n) * n! cancels against the multinomial 1/prod(n_m!) factors.
    const double log_pois_times_fact = -config.lambda + n * log_lambda;
    per_n.push_back(log_pois_times_fact + log_sum_exp(terms));
  }
  return log_sum_exp(per_n);
}

ExactLikelihoodDetector::ExactLikelihoodDetector(const SystemConfig& config, int n_max)
    : config_(config), n_max_(n_max) {
  require_valid(config_);
  if (config_.K != 1) throw UnsupportedConfiguration("exact likelihood is only defined for K = 1");
}

DetectionOutcome ExactLikelihoodDetector::detect(std::span<const ReceivedBlock> blocks) const {
  if (blocks.empty()) throw ConfigError("need at least one collection interval");
  DetectionOutcome out;
  for (int bit = 0; bit < 2; ++bit) {
    double score = safe_log(config_.prior.table[static_cast<std::size_t>(bit)]);
    if (score != kNegInf) {
      for (const auto& b : blocks) score += exact_small_lambda_likelihood(b, config_, bit, n_max_);
    }
    out.log_posteriors.push_back(score);
  }
  out.estimate = HypothesisVector({static_cast<std::uint8_t>(argmax_lexicographic(out.log_posteriors))});
  return out;
}

}  // namespace tbma
