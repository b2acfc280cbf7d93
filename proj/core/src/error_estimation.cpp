#include "tbma/error_estimation.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "tbma/detectors.hpp"
#include "tbma/errors.hpp"
#include "tbma/parallel.hpp"
#include "tbma/phy_sim.hpp"
#include "tbma/quantization.hpp"

namespace tbma {

namespace {

constexpr std::int64_t kMinTrials = 100;
constexpr std::int64_t kMinErrorEvents = 10;
constexpr std::size_t kChunk = 256;

}  // namespace

HypothesisVector draw_truth(const SystemConfig& config, std::uint64_t seed, std::uint64_t trial) {
  auto engine = make_engine(RngSeed{seed, trial, 0, 0}, Stream::truth);
  std::discrete_distribution<std::size_t> pick(config.prior.table.begin(), config.prior.table.end());
  return HypothesisVector::from_index(config.K, pick(engine));
}

const char* to_string(DetectionMode mode) { return mode == DetectionMode::edge ? "edge" : "cloud"; }

std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, std::min(p, center - half)), std::min(1.0, std::max(p, center + half))};
}

ErrorProbEstimate estimate_error_prob(const SystemConfig& config, int L, std::int64_t trials,
                                      DetectionMode mode, std::uint64_t seed, unsigned threads) {
  require_valid(config);
  if (trials < kMinTrials) throw ConfigError("need at least 100 trials");
  if (L < 1) throw ConfigError("L must be at least 1");

  std::vector<EdgeMapDetector> edge;
  std::vector<double> sigma2_q;
  std::optional<CloudMapDetector> cloud;
  if (mode == DetectionMode::edge) {
    for (int c = 0; c < config.K; ++c) edge.emplace_back(config, c);
  } else {
    for (int c = 0; c < config.K; ++c) sigma2_q.push_back(solve_quantization_noise(config, c).sigma2_q);
    cloud.emplace(config, sigma2_q);
  }

  const auto n_trials = static_cast<std::size_t>(trials);
  const std::size_t chunks = (n_trials + kChunk - 1) / kChunk;
  std::vector<std::int64_t> chunk_errors(chunks, 0);

  parallel_for(chunks, threads, [&](std::size_t chunk) {
    const std::size_t begin = chunk * kChunk;
    const std::size_t end = std::min(n_trials, begin + kChunk);
    std::vector<std::vector<ReceivedBlock>> per_cell(static_cast<std::size_t>(config.K));
    std::vector<Eigen::VectorXcd> stacked;
    std::int64_t errors = 0;
    for (std::size_t t = begin; t < end; ++t) {
      const auto truth = draw_truth(config, seed, t);
      for (auto& v : per_cell) v.clear();
      stacked.clear();
      for (int l = 0; l < L; ++l) {
        auto blocks = sample_interval(config, truth, static_cast<std::uint64_t>(l), RngSeed{seed, t, 0, 0});
        if (mode == DetectionMode::edge) {
          for (auto& b : blocks) per_cell[static_cast<std::size_t>(b.cell)].push_back(std::move(b));
        } else {
          for (auto& b : blocks) {
            if (sigma2_q[static_cast<std::size_t>(b.cell)] > 0.0) {
              b = quantize_block(b, sigma2_q[static_cast<std::size_t>(b.cell)], config.signal_field,
                                 RngSeed{seed, t, static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(b.cell)});
            }
          }
          stacked.push_back(stack_blocks(blocks));
        }
      }
      bool wrong = false;
      if (mode == DetectionMode::edge) {
        for (int c = 0; c < config.K && !wrong; ++c) {
          const auto decision = edge[static_cast<std::size_t>(c)].detect(per_cell[static_cast<std::size_t>(c)]);
          wrong = decision.estimate[0] != truth[c];
        }
      } else {
        wrong = !(cloud->detect(stacked).estimate == truth);
      }
      errors += wrong ? 1 : 0;
    }
    chunk_errors[chunk] = errors;
  });

  ErrorProbEstimate est;
  est.L = L;
  est.trials = trials;
  for (auto e : chunk_errors) est.errors += e;
  est.p_hat = static_cast<double>(est.errors) / static_cast<double>(trials);
  std::tie(est.ci_lo, est.ci_hi) = wilson_interval(est.errors, trials);
  return est;
}

ErrorRatePoint to_rate_point(const ErrorProbEstimate& estimate) {
  return {static_cast<double>(estimate.L), estimate.p_hat, estimate.errors};
}

double fit_exponent(std::span<const ErrorRatePoint> points) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& p : points) {
    if (!(p.p_hat > 0.0 && p.p_hat < 1.0)) continue;
    if (p.errors && *p.errors < kMinErrorEvents) continue;
    usable.emplace_back(p.L, -std::log(p.p_hat));
  }
  if (usable.size() < 3) throw ConfigError("insufficient usable points for exponent fit");
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : usable) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(usable.size());
  my /= static_cast<double>(usable.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : usable) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) throw ConfigError("exponent fit needs distinct L values");
  return sxy / sxx;
}

double oracle_agreement_rate(const SystemConfig& config, int L, std::int64_t trials, std::uint64_t seed,
                             int n_max) {
  require_valid(config);
  if (config.K != 1) throw UnsupportedConfiguration("oracle agreement is only defined for K = 1");
  if (trials < 1 || L < 1) throw ConfigError("need positive trials and L");
  const EdgeMapDetector surrogate(config, 0);
  const ExactLikelihoodDetector exact(config, n_max >= 0 ? n_max : default_truncation(config.lambda));
  std::int64_t agree = 0;
  std::vector<ReceivedBlock> blocks;
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto trial = static_cast<std::uint64_t>(t);
    const auto truth = draw_truth(config, seed, trial);
    blocks.clear();
    for (int l = 0; l < L; ++l) {
      blocks.push_back(sample_interval(config, truth, static_cast<std::uint64_t>(l), RngSeed{seed, trial, 0, 0})[0]);
    }
    if (surrogate.detect(blocks).estimate == exact.detect(blocks).estimate) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(trials);
}

}  // namespace tbma
