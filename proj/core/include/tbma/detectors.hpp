#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tbma/config.hpp"
#include "tbma/gaussian_density.hpp"
#include "tbma/phy_sim.hpp"

namespace tbma {

/// MAP decision. Edge decisions carry a length-1 estimate; cloud decisions
/// a length-K vector. `log_posteriors` are unnormalized, one per candidate
/// in lexicographic order.
struct DetectionOutcome {
  HypothesisVector estimate;
  std::vector<double> log_posteriors;
};

/// Index of the largest score; the lowest index wins ties. -inf everywhere
/// returns 0.
std::size_t argmax_lexicographic(std::span<const double> scores);

/// log(sum(exp(x))), -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> x);

/// Per-cell binary MAP test on the Gaussian surrogate. Unknown interferer
/// hypotheses are marginalized under the joint prior. detect() reads only
/// the blocks whose `cell` matches.
class EdgeMapDetector {
 public:
  EdgeMapDetector(const SystemConfig& config, int cell);

  DetectionOutcome detect(std::span<const ReceivedBlock> blocks) const;

 private:
  struct Component {
    int own_bit;
    double log_prior;
    DiagonalGaussianDensity density;
  };
  std::vector<Component> components_;
  int cell_;
};

DetectionOutcome edge_map_detect(std::span<const ReceivedBlock> blocks, const SystemConfig& config,
                                 int cell);

/// 2^K-ary MAP test on stacked (quantized) observations. K = 2 only.
class CloudMapDetector {
 public:
  CloudMapDetector(const SystemConfig& config, std::span<const double> sigma2_q);

  DetectionOutcome detect(std::span<const Eigen::VectorXcd> stacked) const;

 private:
  std::vector<double> log_prior_;
  std::vector<GaussianDensity> densities_;
  int cells_;
};

DetectionOutcome cloud_map_detect(std::span<const Eigen::VectorXcd> stacked,
                                  const SystemConfig& config, std::span<const double> sigma2_q);

/// Poisson truncation point lambda + 10 sqrt(lambda) + 20, rounded up.
int default_truncation(double lambda);

/// Exact log-likelihood of one single-cell block under theta_bit: a
/// Poisson/multinomial mixture over device counts (truncated at n_max) of
/// per-preamble Gaussians. K = 1 only.
double exact_small_lambda_likelihood(const ReceivedBlock& block, const SystemConfig& config, int bit,
                                     int n_max);

/// MAP detector built on the exact mixture likelihood. K = 1 only.
class ExactLikelihoodDetector {
 public:
  ExactLikelihoodDetector(const SystemConfig& config, int n_max);

  DetectionOutcome detect(std::span<const ReceivedBlock> blocks) const;

 private:
  SystemConfig config_;
  int n_max_;
};

}  // namespace tbma
