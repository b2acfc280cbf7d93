#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tbma {

enum class SignalField { real, complex };

/// Second-moment model used for the Gaussian surrogates.
///
/// `compound_poisson` uses the exact per-preamble variance of a Poisson sum
/// of Ricean gains, lambda * p(m) * (sigma^2 + mu^2). `gain_variance_only` drops the
/// mu^2 term (sigma^2 * lambda * p(m)), which only matches the simulated
/// signal when the channel means are zero.
enum class VarianceModel { compound_poisson, gain_variance_only };

/// Cross-cell covariance between the two ENs' entries for the same preamble.
/// `binomial` carries a p(1-p) factor, `poisson` is the Poisson-sum value
/// lambda * mu_H * mu_G * (p^1(m) + p^2(m)).
enum class CrossCovarianceModel { binomial, poisson };

/// Assignment of theta_0 / theta_1 to every cell. Cell 0 is the most
/// significant bit of index().
class HypothesisVector {
 public:
  HypothesisVector() = default;
  explicit HypothesisVector(std::vector<std::uint8_t> bits);

  static HypothesisVector from_index(int cells, std::size_t index);

  std::size_t index() const;
  int size() const { return static_cast<int>(bits_.size()); }
  int operator[](int cell) const { return bits_.at(static_cast<std::size_t>(cell)); }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  HypothesisVector with_bit(int cell, int value) const;
  std::string to_string() const;

  friend bool operator==(const HypothesisVector&, const HypothesisVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::size_t hypothesis_count(int cells);

/// Joint prior over the 2^K hypothesis vectors, indexed by HypothesisVector::index().
struct QoIPrior {
  std::vector<double> table;
  std::optional<double> rho;

  double probability(const HypothesisVector& k) const { return table.at(k.index()); }
  double marginal(int cell, int bit) const;

  static QoIPrior uniform(int cells);
};

/// Two-cell prior with Pr[theta^1 == theta^2] = rho and uniform marginals.
QoIPrior build_prior_from_rho(double rho);

struct CellMeasurementModel {
  std::vector<double> p0;
  std::vector<double> p1;

  const std::vector<double>& given(int bit) const { return bit == 0 ? p0 : p1; }
};

struct SystemConfig {
  int K = 2;
  int M = 2;
  double lambda = 4.0;
  double snr = 1.0;  // linear E_s / W_0
  double mu_H = 1.0;
  double sigma2_H = 1.0;
  double mu_G = 0.0;
  double sigma2_G = 0.0;
  double C = 2.0;  // bit/s/Hz per EN
  std::vector<CellMeasurementModel> measurement_model;
  QoIPrior prior;
  SignalField signal_field = SignalField::real;
  VarianceModel variance_model = VarianceModel::compound_poisson;
  CrossCovarianceModel cross_covariance = CrossCovarianceModel::binomial;

  double noise_variance() const { return 1.0 / snr; }
  const std::vector<double>& distribution(int cell, int bit) const {
    return measurement_model.at(static_cast<std::size_t>(cell)).given(bit);
  }
};

double db_to_linear(double db);
double linear_to_db(double linear);

struct ConfigViolation {
  std::string field;
  std::string message;
};

/// Every violated invariant of `config`; empty when valid.
std::vector<ConfigViolation> validate_config(const SystemConfig& config);

/// Throws ConfigError listing all violations.
void require_valid(const SystemConfig& config);

/// Repo default measurement model (M = 2, p0 = [0.9, 0.1], p1 = [0.1, 0.9]
/// in every cell). Not taken from any published figure.
std::vector<CellMeasurementModel> default_measurement_model(int cells);

/// Two-cell interference sweep operating point: mu_H = 1, sigma2_H = 1,
/// mu_G = 0, lambda = 4, SNR = -1 dB, repo-default measurement model.
SystemConfig interference_sweep_config(double sigma2_G = 0.0, double capacity = 2.0);

/// Two-cell fronthaul sweep operating point: interference-free, rho = 0.8.
SystemConfig fronthaul_sweep_config(double capacity = 2.0);

const char* to_string(SignalField field);
const char* to_string(VarianceModel model);
const char* to_string(CrossCovarianceModel model);

}  // namespace tbma
