#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tbma/config.hpp"
#include "tbma/errors.hpp"
#include "tbma/quantization.hpp"
#include "tbma/surrogate.hpp"

namespace tbma {
namespace {

TEST(TestChannel, UnitVarianceOneBit) {
  const std::vector<double> s{1.0};
  const auto sol = solve_test_channel(s, 1.0);
  EXPECT_NEAR(sol.sigma2_q, 1.0 / 3.0, 1e-10);
  EXPECT_LT(std::abs(sol.residual), 1e-12);
}

TEST(TestChannel, EqualVariancesClosedForm) {
  const std::vector<double> s{2.5, 2.5, 2.5};
  for (double c : {0.25, 1.0, 3.0, 7.5}) {
    const auto sol = solve_test_channel(s, c);
    EXPECT_NEAR(sol.sigma2_q, 2.5 / (std::pow(2.0, 2.0 * c) - 1.0), 1e-10 * 2.5);
  }
}

TEST(TestChannel, ResidualAndRateConsistency) {
  const std::vector<double> s{0.3, 4.0, 11.0};
  for (double c : {0.1, 0.5, 2.0, 6.0, 12.0}) {
    const auto sol = solve_test_channel(s, c);
    EXPECT_LT(std::abs(sol.residual), 1e-12);
    EXPECT_NEAR(test_channel_rate(s, sol.sigma2_q), 3.0 * c, 1e-12);
    const double lo = 0.3 / (std::pow(2.0, 2.0 * c) - 1.0);
    const double hi = 11.0 / (std::pow(2.0, 2.0 * c) - 1.0);
    EXPECT_GE(sol.sigma2_q, lo * (1.0 - 1e-12));
    EXPECT_LE(sol.sigma2_q, hi * (1.0 + 1e-12));
  }
}

TEST(QuantizationNoise, VanishesAtHighCapacity) {
  auto cfg = interference_sweep_config(0.0, 30.0);
  for (int c = 0; c < 2; ++c) {
    const auto sol = solve_quantization_noise(cfg, c);
    const double s_max = prior_averaged_variance(cfg, c).maxCoeff();
    EXPECT_LT(sol.sigma2_q, 1e-6 * s_max);
  }
}

TEST(QuantizationNoise, DecreasingInCapacity) {
  double prev = INFINITY;
  for (double c : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double q = solve_quantization_noise(fronthaul_sweep_config(c), 0).sigma2_q;
    EXPECT_LT(q, prev);
    prev = q;
  }
}

TEST(QuantizationNoise, IncreasingInLambda) {
  double prev = 0.0;
  for (double lambda : {0.5, 1.0, 4.0, 16.0}) {
    auto cfg = interference_sweep_config(0.5, 2.0);
    cfg.lambda = lambda;
    const double q = solve_quantization_noise(cfg, 1).sigma2_q;
    EXPECT_GT(q, prev);
    prev = q;
  }
}

TEST(QuantizationNoise, ZeroCapacityIsAnError) {
  auto cfg = interference_sweep_config(0.0, 0.0);
  EXPECT_THROW(solve_quantization_noise(cfg, 0), ConfigError);
}

TEST(QuantizationNoise, PriorAveragedVarianceByHand) {
  // Interference-free, uniform marginals: S(m) = 1/2 (Sigma_0(m) + Sigma_1(m)).
  const auto cfg = interference_sweep_config(0.0);
  const auto s = prior_averaged_variance(cfg, 0);
  const double noise = 1.0 / cfg.snr;
  EXPECT_NEAR(s(0), 0.5 * (4 * 0.9 * 2 + 4 * 0.1 * 2) + noise, 1e-12);
  EXPECT_NEAR(s(1), s(0), 1e-12);
}

}  // namespace
}  // namespace tbma
