#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles/chernoff_oracles.hpp"
#include "tbma/chernoff.hpp"
#include "tbma/errors.hpp"

namespace tbma {
namespace {

GaussianSurrogate diag(std::vector<double> mean, std::vector<double> var) {
  GaussianSurrogate g;
  g.mean = Eigen::Map<Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
  g.cov = Eigen::Map<Eigen::VectorXd>(var.data(), static_cast<Eigen::Index>(var.size())).asDiagonal();
  g.diagonal_only = true;
  return g;
}

GaussianSurrogate random_dense(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = n(rng);
  GaussianSurrogate g;
  g.mean = Eigen::VectorXd::NullaryExpr(d, [&] { return 2.0 * n(rng); });
  g.cov = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(d, d);
  return g;
}

TEST(AlphaChernoff, EndpointsVanish) {
  const auto g0 = diag({1.0, 2.0}, {1.0, 3.0});
  const auto g1 = diag({0.0, -1.0}, {2.0, 0.5});
  EXPECT_NEAR(alpha_chernoff(g0, g1, 0.0), 0.0, 1e-12);
  EXPECT_NEAR(alpha_chernoff(g0, g1, 1.0), 0.0, 1e-12);
}

TEST(AlphaChernoff, SkewSymmetricAndConcave) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto g0 = random_dense(rng, 4);
    const auto g1 = random_dense(rng, 4);
    for (double a = 0.0; a <= 1.0; a += 0.05) {
      EXPECT_NEAR(alpha_chernoff(g0, g1, a), alpha_chernoff(g1, g0, 1.0 - a), 1e-9);
      EXPECT_GE(alpha_chernoff(g0, g1, a), -1e-12);
    }
    for (double a = 0.1; a <= 0.9; a += 0.1) {
      const double mid = alpha_chernoff(g0, g1, a);
      const double avg = 0.5 * (alpha_chernoff(g0, g1, a - 0.05) + alpha_chernoff(g0, g1, a + 0.05));
      EXPECT_GE(mid, avg - 1e-10);
    }
  }
}

TEST(AlphaChernoff, MatchesEntrywiseOracle) {
  const std::vector<double> m0{3.6, 0.4, 1.0}, v0{8.5, 2.1, 1.2};
  const std::vector<double> m1{0.4, 3.6, 0.9}, v1{2.1, 8.5, 4.0};
  const auto g0 = diag(m0, v0);
  const auto g1 = diag(m1, v1);
  for (double a : {0.1, 0.3, 0.5, 0.77}) {
    EXPECT_NEAR(alpha_chernoff(g0, g1, a), oracle::diagonal_alpha_chernoff(m0, v0, m1, v1, a), 1e-12);
  }
}

TEST(AlphaChernoff, FullAndDiagonalAgree) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> m0, v0, m1, v1;
    for (int m = 0; m < 6; ++m) {
      m0.push_back(u(rng));
      v0.push_back(u(rng));
      m1.push_back(u(rng));
      v1.push_back(u(rng));
    }
    const auto g0 = diag(m0, v0);
    const auto g1 = diag(m1, v1);
    const double a = u(rng) / 5.0;
    EXPECT_NEAR(alpha_chernoff_full(g0, g1, a), alpha_chernoff_diagonal(g0, g1, a), 1e-10);
  }
}

TEST(ChernoffInformation, EqualVarianceUnitSeparation) {
  // Means two standard deviations apart: d^2 / 8 = 0.5 at alpha = 1/2.
  const auto r = chernoff_information(diag({0.0}, {1.0}), diag({2.0}, {1.0}));
  EXPECT_NEAR(r.value, 0.5, 1e-9);
  EXPECT_NEAR(r.alpha_star, 0.5, 1e-6);
  const auto [q, qa] = oracle::chernoff_by_quadrature(0.0, 1.0, 2.0, 1.0);
  EXPECT_NEAR(r.value, q, 1e-8);
}

TEST(ChernoffInformation, UnequalVarianceAgainstQuadrature) {
  const auto r = chernoff_information(diag({0.0}, {1.0}), diag({0.0}, {4.0}));
  const auto [q, qa] = oracle::chernoff_by_quadrature(0.0, 1.0, 0.0, 4.0);
  EXPECT_NEAR(r.value, q, 1e-8);
  EXPECT_NEAR(r.value, 0.117038074531563, 1e-8);
  // alpha weights Sigma_0 in the blend, i.e. it is the exponent on f_1.
  EXPECT_NEAR(r.alpha_star, 1.0 - qa, 1e-4);
}

TEST(ChernoffInformation, ScalarQuadratureSweep) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.2, 4.0);
  for (int t = 0; t < 20; ++t) {
    const double mu1 = u(rng) - 2.0, v0 = u(rng), v1 = u(rng);
    const auto r = chernoff_information(diag({0.0}, {v0}), diag({mu1}, {v1}));
    const auto [q, qa] = oracle::chernoff_by_quadrature(0.0, v0, mu1, v1);
    EXPECT_NEAR(r.value, q, 1e-7) << "mu1=" << mu1 << " v0=" << v0 << " v1=" << v1;
  }
}

TEST(ChernoffInformation, DenseGridAgreement) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const auto g0 = random_dense(rng, 3);
    const auto g1 = random_dense(rng, 3);
    const auto r = chernoff_information(g0, g1);
    const double grid = oracle::dense_grid_max([&](double a) { return alpha_chernoff_full(g0, g1, a); });
    EXPECT_NEAR(r.value, grid, 1e-9);
    EXPECT_NEAR(alpha_chernoff(g0, g1, r.alpha_star), r.value, 1e-12);
  }
}

TEST(ChernoffInformation, IdenticalSurrogatesGiveZero) {
  const auto g = diag({1.0, 2.0}, {0.5, 0.7});
  const auto r = chernoff_information(g, g);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.alpha_star, 0.5);
}

TEST(LogDet, RejectsIndefinite) {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(log_det_spd(m, "test"), NumericalError);
  Eigen::MatrixXd ok = Eigen::Vector2d(2.0, 3.0).asDiagonal();
  EXPECT_NEAR(log_det_spd(ok, "test"), std::log(6.0), 1e-14);
}

}  // namespace
}  // namespace tbma
