#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tbma/config.hpp"
#include "tbma/errors.hpp"
#include "tbma/error_estimation.hpp"

namespace tbma {
namespace {

SystemConfig single_cell() {
  SystemConfig cfg;
  cfg.K = 1;
  cfg.M = 2;
  cfg.lambda = 4.0;
  cfg.snr = db_to_linear(-1.0);
  cfg.measurement_model = default_measurement_model(1);
  cfg.prior = QoIPrior::uniform(1);
  return cfg;
}

TEST(Wilson, KnownValues) {
  const auto [lo, hi] = wilson_interval(0, 100);
  EXPECT_EQ(lo, 0.0);
  EXPECT_NEAR(hi, 0.03699, 1e-4);
  const auto [lo2, hi2] = wilson_interval(50, 100);
  EXPECT_NEAR(lo2, 0.4038, 1e-4);
  EXPECT_NEAR(hi2, 0.5962, 1e-4);
}

TEST(EstimateErrorProb, UninformativeMeasurementsGiveCoinFlip) {
  auto cfg = single_cell();
  cfg.measurement_model[0].p1 = cfg.measurement_model[0].p0;
  const auto est = estimate_error_prob(cfg, 3, 4000, DetectionMode::edge, 11);
  EXPECT_LE(est.ci_lo, 0.5);
  EXPECT_GE(est.ci_hi, 0.5);
}

TEST(EstimateErrorProb, TwoIndependentCoinFlipsGiveThreeQuarters) {
  auto cfg = interference_sweep_config();
  for (auto& cell : cfg.measurement_model) cell.p1 = cell.p0;
  const auto est = estimate_error_prob(cfg, 1, 4000, DetectionMode::edge, 12);
  EXPECT_LE(est.ci_lo, 0.75);
  EXPECT_GE(est.ci_hi, 0.75);
}

TEST(EstimateErrorProb, IndependentOfThreadCount) {
  const auto cfg = interference_sweep_config(0.5);
  for (auto mode : {DetectionMode::edge, DetectionMode::cloud}) {
    const auto a = estimate_error_prob(cfg, 2, 1500, mode, 21, 1);
    const auto b = estimate_error_prob(cfg, 2, 1500, mode, 21, 4);
    EXPECT_EQ(a.errors, b.errors);
  }
}

TEST(EstimateErrorProb, DecreasesWithL) {
  const auto cfg = single_cell();
  double prev = 1.0;
  for (int L : {1, 2, 5}) {
    const auto est = estimate_error_prob(cfg, L, 20000, DetectionMode::edge, 31);
    EXPECT_LT(est.p_hat, prev);
    prev = est.p_hat;
  }
}

TEST(EstimateErrorProb, Preconditions) {
  const auto cfg = single_cell();
  EXPECT_THROW(estimate_error_prob(cfg, 1, 99, DetectionMode::edge, 1), ConfigError);
  EXPECT_THROW(estimate_error_prob(cfg, 0, 1000, DetectionMode::edge, 1), ConfigError);
  EXPECT_THROW(estimate_error_prob(cfg, 1, 1000, DetectionMode::cloud, 1), UnsupportedConfiguration);
}

TEST(FitExponent, ExactSlope) {
  std::vector<ErrorRatePoint> pts;
  for (double L : {1.0, 2.0, 5.0, 10.0}) pts.push_back({L, 0.5 * std::exp(-0.3 * L), std::nullopt});
  EXPECT_NEAR(fit_exponent(pts), 0.3, 1e-12);
}

TEST(FitExponent, NoisySlope) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 0.02);
  std::vector<ErrorRatePoint> pts;
  for (int L = 1; L <= 20; ++L) pts.push_back({static_cast<double>(L), 0.4 * std::exp(-0.3 * L + n(rng)), std::nullopt});
  EXPECT_NEAR(fit_exponent(pts), 0.3, 0.01);
}

TEST(FitExponent, DropsUnusablePoints) {
  std::vector<ErrorRatePoint> pts{{1.0, 0.5 * std::exp(-0.3), 500},
                                  {2.0, 0.5 * std::exp(-0.6), 200},
                                  {5.0, 0.5 * std::exp(-1.5), 50},
                                  {10.0, 0.9, 3},
                                  {20.0, 0.0, 0}};
  EXPECT_NEAR(fit_exponent(pts), 0.3, 1e-12);
  pts.erase(pts.begin());
  EXPECT_THROW(fit_exponent(pts), ConfigError);
}

TEST(DrawTruth, FollowsPrior) {
  auto cfg = interference_sweep_config();
  cfg.prior = build_prior_from_rho(0.8);
  const int n = 20000;
  int equal = 0;
  for (int t = 0; t < n; ++t) {
    const auto k = draw_truth(cfg, 3, static_cast<std::uint64_t>(t));
    equal += k[0] == k[1];
  }
  EXPECT_NEAR(static_cast<double>(equal) / n, 0.8, 4.0 * std::sqrt(0.16 / n));
}

}  // namespace
}  // namespace tbma
