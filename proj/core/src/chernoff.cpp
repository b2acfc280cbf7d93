#include "tbma/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tbma/errors.hpp"

namespace tbma {

namespace {

constexpr double kAlphaTolerance = 1e-8;
constexpr double kFlatTolerance = 1e-14;

void check_pair(const GaussianSurrogate& g0, const GaussianSurrogate& g1, double alpha) {
  if (g0.dimension() != g1.dimension() || g0.cov.rows() != g0.dimension() ||
      g1.cov.rows() != g1.dimension()) {
    throw ConfigError("surrogate dimension mismatch");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
}

}  // namespace

double log_det_spd(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
    std::ostringstream msg;
    msg << what << " is not positive definite (dimension " << m.rows()
        << ", smallest eigenvalue " << eig.eigenvalues().minCoeff() << ")";
    throw NumericalError(msg.str());
  }
  // Sum of logs of the Cholesky diagonal; stays finite where |m| would overflow.
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

AlphaChernoff::AlphaChernoff(const GaussianSurrogate& g0, const GaussianSurrogate& g1)
    : diagonal_(g0.diagonal_only && g1.diagonal_only) {
  check_pair(g0, g1, 0.5);
  delta_ = g0.mean - g1.mean;
  if (diagonal_) {
    var0_ = g0.cov.diagonal();
    var1_ = g1.cov.diagonal();
    if ((var0_.array() <= 0.0).any() || (var1_.array() <= 0.0).any()) {
      throw NumericalError("diagonal surrogate has a non-positive variance");
    }
  } else {
    cov0_ = g0.cov;
    cov1_ = g1.cov;
    logdet0_ = log_det_spd(cov0_, "covariance of first surrogate");
    logdet1_ = log_det_spd(cov1_, "covariance of second surrogate");
  }
}

double AlphaChernoff::operator()(double alpha) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  const double beta = 1.0 - alpha;
  if (diagonal_) {
    double total = 0.0;
    for (Eigen::Index m = 0; m < delta_.size(); ++m) {
      const double blend = alpha * var0_(m) + beta * var1_(m);
      total += 0.5 * std::log(blend) - 0.5 * alpha * std::log(var0_(m)) -
               0.5 * beta * std::log(var1_(m)) +
               0.5 * alpha * beta * delta_(m) * delta_(m) / blend;
    }
    return total;
  }
  const Eigen::MatrixXd blend = alpha * cov0_ + beta * cov1_;
  Eigen::LLT<Eigen::MatrixXd> llt(blend);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "covariance blend at alpha=" << alpha << " is not positive definite";
    throw NumericalError(msg.str());
  }
  const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  const double quad = delta_.dot(llt.solve(delta_));
  return 0.5 * logdet - 0.5 * alpha * logdet0_ - 0.5 * beta * logdet1_ +
         0.5 * alpha * beta * quad;
}

double alpha_chernoff(const GaussianSurrogate& g0, const GaussianSurrogate& g1, double alpha) {
  check_pair(g0, g1, alpha);
  return AlphaChernoff(g0, g1)(alpha);
}

double alpha_chernoff_full(const GaussianSurrogate& g0, const GaussianSurrogate& g1,
                           double alpha) {
  GaussianSurrogate a = g0;
  GaussianSurrogate b = g1;
  a.diagonal_only = false;
  b.diagonal_only = false;
  return alpha_chernoff(a, b, alpha);
}

double alpha_chernoff_diagonal(const GaussianSurrogate& g0, const GaussianSurrogate& g1,
                               double alpha) {
  GaussianSurrogate a = g0;
  GaussianSurrogate b = g1;
  a.diagonal_only = true;
  b.diagonal_only = true;
  return alpha_chernoff(a, b, alpha);
}

ChernoffResult chernoff_information(const GaussianSurrogate& g0, const GaussianSurrogate& g1) {
  const AlphaChernoff f(g0, g1);

  const double q1 = f(0.25);
  const double mid = f(0.5);
  const double q3 = f(0.75);
  const double spread = std::max({q1, mid, q3}) - std::min({q1, mid, q3});
  if (spread <= kFlatTolerance * (1.0 + std::abs(mid))) {
    return {std::max(mid, 0.0), 0.5};
  }

  // The objective is concave in alpha; golden-section keeps a bracketing
  // interval around the maximizer.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > kAlphaTolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double alpha = 0.5 * (lo + hi);
  double value = f(alpha);
  double best_alpha = alpha;
  // Keep whichever probe was largest; guards against round-off at the end.
  for (const auto& [a, v] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (v > value) {
      value = v;
      best_alpha = a;
    }
  }
  return {std::max(value, 0.0), best_alpha};
}

}  // namespace tbma
