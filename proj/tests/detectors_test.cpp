#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tbma/config.hpp"
#include "tbma/detectors.hpp"
#include "tbma/errors.hpp"
#include "tbma/phy_sim.hpp"

namespace tbma {
namespace {

SystemConfig single_cell(double lambda) {
  SystemConfig cfg;
  cfg.K = 1;
  cfg.M = 2;
  cfg.lambda = lambda;
  cfg.snr = 1.0;
  cfg.mu_H = 1.0;
  cfg.sigma2_H = 1.0;
  cfg.measurement_model = default_measurement_model(1);
  cfg.prior = QoIPrior::uniform(1);
  return cfg;
}

double normal_log_pdf(double y, double mean, double var) {
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - 0.5 * (y - mean) * (y - mean) / var;
}

TEST(Argmax, TiesGoToLowestIndex) {
  const std::vector<double> s{1.0, 3.0, 3.0};
  EXPECT_EQ(argmax_lexicographic(s), 1U);
  const std::vector<double> none{-INFINITY, -INFINITY};
  EXPECT_EQ(argmax_lexicographic(none), 0U);
}

TEST(Argmax, ShiftInvariance) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> n(0.0, 50.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> s(1 + rng() % 8);
    for (auto& v : s) v = n(rng);
    const double shift = n(rng) * 1e3;
    std::vector<double> shifted = s;
    for (auto& v : shifted) v += shift;
    EXPECT_EQ(argmax_lexicographic(s), argmax_lexicographic(shifted));
    EXPECT_NEAR(log_sum_exp(shifted), log_sum_exp(s) + shift, 1e-9 * std::abs(shift) + 1e-9);
  }
}

TEST(LogSumExp, StableForLargeMagnitudes) {
  const std::vector<double> big{1000.0, 1000.0};
  EXPECT_NEAR(log_sum_exp(big), 1000.0 + std::log(2.0), 1e-12);
  const std::vector<double> empty;
  EXPECT_EQ(log_sum_exp(empty), -INFINITY);
}

TEST(CloudMap, FullyCorrelatedPriorNeverMixes) {
  auto cfg = interference_sweep_config(0.0);
  cfg.prior = build_prior_from_rho(1.0);
  const std::vector<double> q{0.2, 0.2};
  const CloudMapDetector det(cfg, q);
  for (std::uint64_t t = 0; t < 300; ++t) {
    const HypothesisVector truth({static_cast<std::uint8_t>(t % 2), static_cast<std::uint8_t>((t / 2) % 2)});
    std::vector<Eigen::VectorXcd> stacked{stack_blocks(sample_interval(cfg, truth, 0, RngSeed{4, t, 0, 0}))};
    const auto out = det.detect(stacked);
    EXPECT_EQ(out.estimate[0], out.estimate[1]);
  }
}

TEST(CloudMap, DegeneratesToPerCellEdgeDecisions) {
  auto cfg = interference_sweep_config(0.0);
  cfg.prior = build_prior_from_rho(0.5);
  const std::vector<double> q{0.0, 0.0};
  const CloudMapDetector cloud(cfg, q);
  const EdgeMapDetector edge0(cfg, 0), edge1(cfg, 1);
  for (std::uint64_t t = 0; t < 200; ++t) {
    const HypothesisVector truth = HypothesisVector::from_index(2, t % 4);
    std::vector<ReceivedBlock> all;
    std::vector<Eigen::VectorXcd> stacked;
    for (int l = 0; l < 3; ++l) {
      auto blocks = sample_interval(cfg, truth, static_cast<std::uint64_t>(l), RngSeed{6, t, 0, 0});
      stacked.push_back(stack_blocks(blocks));
      all.insert(all.end(), blocks.begin(), blocks.end());
    }
    const auto c = cloud.detect(stacked);
    EXPECT_EQ(c.estimate[0], edge0.detect(all).estimate[0]);
    EXPECT_EQ(c.estimate[1], edge1.detect(all).estimate[0]);
  }
}

TEST(EdgeMap, UsesOnlyOwnCellBlocks) {
  const auto cfg = interference_sweep_config(1.0);
  const EdgeMapDetector det(cfg, 1);
  auto blocks = sample_interval(cfg, HypothesisVector({0, 1}), 0, RngSeed{8, 0, 0, 0});
  const auto before = det.detect(blocks);
  blocks[0].y.setConstant(1e6);
  const auto after = det.detect(blocks);
  EXPECT_EQ(before.log_posteriors, after.log_posteriors);
}

TEST(ExactLikelihood, SinglePreambleMatchesPoissonMixture) {
  auto cfg = single_cell(0.7);
  cfg.M = 1;
  cfg.measurement_model = {{{1.0}, {1.0}}};
  for (double y : {-1.5, 0.0, 0.3, 2.0, 4.5}) {
    const ReceivedBlock block{0, 0, Eigen::VectorXcd::Constant(1, {y, 0.0})};
    std::vector<double> terms;
    double log_pois = -cfg.lambda;
    for (int n = 0; n <= 60; ++n) {
      if (n > 0) log_pois += std::log(cfg.lambda / n);
      terms.push_back(log_pois + normal_log_pdf(y, n * cfg.mu_H, n * cfg.sigma2_H + 1.0 / cfg.snr));
    }
    EXPECT_NEAR(exact_small_lambda_likelihood(block, cfg, 0, 60), log_sum_exp(terms), 1e-10);
  }
}

TEST(ExactLikelihood, VanishingLambdaIsNoiseOnly) {
  const auto cfg = single_cell(1e-12);
  const ReceivedBlock block{0, 0, Eigen::VectorXcd::Constant(2, {0.8, 0.0})};
  const double expected = 2.0 * normal_log_pdf(0.8, 0.0, 1.0);
  EXPECT_NEAR(exact_small_lambda_likelihood(block, cfg, 0, 20), expected, 1e-9);
  EXPECT_NEAR(exact_small_lambda_likelihood(block, cfg, 1, 20), expected, 1e-9);
}

TEST(ExactLikelihood, GuardsAndPreconditions) {
  auto cfg = single_cell(1.0);
  cfg.M = 8;
  cfg.measurement_model = {{std::vector<double>(8, 0.125), std::vector<double>(8, 0.125)}};
  const ReceivedBlock block{0, 0, Eigen::VectorXcd::Zero(8)};
  EXPECT_THROW(exact_small_lambda_likelihood(block, cfg, 0, 200), ConfigError);
  EXPECT_THROW(ExactLikelihoodDetector(interference_sweep_config(), 10), UnsupportedConfiguration);
}

TEST(ExactLikelihood, AgreesWithSurrogateAtLargeSeparation) {
  auto cfg = single_cell(3.0);
  cfg.measurement_model = {{{0.99, 0.01}, {0.01, 0.99}}};
  cfg.snr = 10.0;
  const EdgeMapDetector edge(cfg, 0);
  const ExactLikelihoodDetector exact(cfg, default_truncation(cfg.lambda));
  int agree = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const HypothesisVector truth({static_cast<std::uint8_t>(t % 2)});
    const auto blocks = sample_interval(cfg, truth, 0, RngSeed{10, t, 0, 0});
    agree += edge.detect(blocks).estimate == exact.detect(blocks).estimate;
  }
  EXPECT_GE(agree, 180);
}

}  // namespace
}  // namespace tbma
