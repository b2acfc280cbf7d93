#pragma once

#include "tbma/surrogate.hpp"

namespace tbma {

/// alpha-Chernoff information between two Gaussians, in nats:
///
///   1/2 log|S_a| - a/2 log|S_0| - (1-a)/2 log|S_1|
///     + a(1-a)/2 (m_0 - m_1)^T S_a^{-1} (m_0 - m_1),   S_a = a S_0 + (1-a) S_1.
///
/// Uses the per-entry form when both surrogates are diagonal.
double alpha_chernoff(const GaussianSurrogate& g0, const GaussianSurrogate& g1, double alpha);

/// Full-matrix evaluation regardless of the diagonal flag.
double alpha_chernoff_full(const GaussianSurrogate& g0, const GaussianSurrogate& g1, double alpha);

/// Per-entry evaluation; only valid for diagonal covariances.
double alpha_chernoff_diagonal(const GaussianSurrogate& g0, const GaussianSurrogate& g1,
                               double alpha);

/// Reusable evaluator that factors S_0 and S_1 once.
class AlphaChernoff {
 public:
  AlphaChernoff(const GaussianSurrogate& g0, const GaussianSurrogate& g1);

  double operator()(double alpha) const;

 private:
  bool diagonal_;
  Eigen::VectorXd delta_;
  Eigen::MatrixXd cov0_;
  Eigen::MatrixXd cov1_;
  Eigen::VectorXd var0_;
  Eigen::VectorXd var1_;
  double logdet0_ = 0.0;
  double logdet1_ = 0.0;
};

struct ChernoffResult {
  double value = 0.0;
  double alpha_star = 0.5;
};

/// Chernoff information max_a alpha_chernoff(g0, g1, a) by golden-section
/// search to |da| < 1e-8. Flat objectives report alpha_star = 0.5.
ChernoffResult chernoff_information(const GaussianSurrogate& g0, const GaussianSurrogate& g1);

/// log-determinant of a symmetric positive-definite matrix; throws
/// NumericalError otherwise.
double log_det_spd(const Eigen::MatrixXd& m, const char* what);

}  // namespace tbma
