#include "tbma/config.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "tbma/errors.hpp"

namespace tbma {

namespace {

constexpr double kSumTolerance = 1e-12;

void check_distribution(const std::vector<double>& p, int M, const std::string& field,
                        std::vector<ConfigViolation>& out) {
  if (static_cast<int>(p.size()) != M) {
    out.push_back({field, "distribution length must equal M"});
    return;
  }
  bool in_range = true;
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) in_range = false;
  }
  if (!in_range) out.push_back({field, "distribution entries must lie in [0, 1]"});
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (!(std::abs(sum - 1.0) <= kSumTolerance)) {
    out.push_back({field, "distribution does not sum to 1"});
  }
}

}  // namespace

HypothesisVector::HypothesisVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw ConfigError("hypothesis bits must be 0 or 1");
  }
}

HypothesisVector HypothesisVector::from_index(int cells, std::size_t index) {
  if (cells < 0 || index >= hypothesis_count(cells)) {
    throw ConfigError("hypothesis index out of range");
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(cells));
  for (int c = cells - 1; c >= 0; --c) {
    bits[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(index & 1U);
    index >>= 1U;
  }
  return HypothesisVector(std::move(bits));
}

std::size_t HypothesisVector::index() const {
  std::size_t idx = 0;
  for (auto b : bits_) idx = (idx << 1U) | b;
  return idx;
}

HypothesisVector HypothesisVector::with_bit(int cell, int value) const {
  auto bits = bits_;
  bits.at(static_cast<std::size_t>(cell)) = static_cast<std::uint8_t>(value != 0);
  return HypothesisVector(std::move(bits));
}

std::string HypothesisVector::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::size_t hypothesis_count(int cells) {
  if (cells < 0 || cells > 30) throw ConfigError("cell count out of supported range");
  return std::size_t{1} << static_cast<unsigned>(cells);
}

double QoIPrior::marginal(int cell, int bit) const {
  int cells = 0;
  while ((std::size_t{1} << static_cast<unsigned>(cells)) < table.size()) ++cells;
  double total = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (HypothesisVector::from_index(cells, i)[cell] == bit) total += table[i];
  }
  return total;
}

QoIPrior QoIPrior::uniform(int cells) {
  const auto n = hypothesis_count(cells);
  return QoIPrior{std::vector<double>(n, 1.0 / static_cast<double>(n)), std::nullopt};
}

QoIPrior build_prior_from_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
  const double same = rho / 2.0;
  const double differ = (1.0 - rho) / 2.0;
  // order: 00, 01, 10, 11
  return QoIPrior{{same, differ, differ, same}, rho};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::vector<ConfigViolation> validate_config(const SystemConfig& config) {
  std::vector<ConfigViolation> out;
  if (config.K < 1) out.push_back({"K", "K must be at least 1"});
  if (config.K > 20) out.push_back({"K", "K above 20 is not supported"});
  if (config.M < 1) out.push_back({"M", "M must be at least 1"});
  if (!(config.lambda > 0.0) || !std::isfinite(config.lambda)) {
    out.push_back({"lambda", "lambda must be positive"});
  }
  if (!(config.snr > 0.0) || !std::isfinite(config.snr)) {
    out.push_back({"snr", "snr must be positive"});
  }
  if (!std::isfinite(config.mu_H)) out.push_back({"mu_H", "mu_H must be finite"});
  if (!std::isfinite(config.mu_G)) out.push_back({"mu_G", "mu_G must be finite"});
  if (!(config.sigma2_H >= 0.0) || !std::isfinite(config.sigma2_H)) {
    out.push_back({"sigma2_H", "sigma2_H must be nonnegative"});
  }
  if (!(config.sigma2_G >= 0.0) || !std::isfinite(config.sigma2_G)) {
    out.push_back({"sigma2_G", "sigma2_G must be nonnegative"});
  }
  if (!(config.C >= 0.0)) out.push_back({"C", "C must be nonnegative"});

  if (config.K >= 1 && config.K <= 20) {
    if (static_cast<int>(config.measurement_model.size()) != config.K) {
      out.push_back({"measurement_model", "measurement model must have one entry per cell"});
    } else if (config.M >= 1) {
      for (int c = 0; c < config.K; ++c) {
        const auto& cell = config.measurement_model[static_cast<std::size_t>(c)];
        const std::string base = "measurement_model[" + std::to_string(c) + "]";
        check_distribution(cell.p0, config.M, base + ".p0", out);
        check_distribution(cell.p1, config.M, base + ".p1", out);
      }
    }

    const auto& table = config.prior.table;
    if (table.size() != hypothesis_count(config.K)) {
      out.push_back({"prior", "prior table length must be 2^K"});
    } else {
      bool nonneg = true;
      for (double v : table) {
        if (!(v >= 0.0)) nonneg = false;
      }
      if (!nonneg) out.push_back({"prior", "prior entries must be nonnegative"});
      const double sum = std::accumulate(table.begin(), table.end(), 0.0);
      if (!(std::abs(sum - 1.0) <= kSumTolerance)) {
        out.push_back({"prior", "prior does not sum to 1"});
      }
    }
  }
  if (config.prior.rho && !(*config.prior.rho >= 0.0 && *config.prior.rho <= 1.0)) {
    out.push_back({"prior.rho", "rho must lie in [0, 1]"});
  }
  return out;
}

void require_valid(const SystemConfig& config) {
  const auto violations = validate_config(config);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid configuration:";
  for (const auto& v : violations) msg << "\n  " << v.field << ": " << v.message;
  throw ConfigError(msg.str());
}

std::vector<CellMeasurementModel> default_measurement_model(int cells) {
  return std::vector<CellMeasurementModel>(static_cast<std::size_t>(cells),
                                           CellMeasurementModel{{0.9, 0.1}, {0.1, 0.9}});
}

SystemConfig interference_sweep_config(double sigma2_G, double capacity) {
  SystemConfig cfg;
  cfg.K = 2;
  cfg.M = 2;
  cfg.lambda = 4.0;
  cfg.snr = db_to_linear(-1.0);
  cfg.mu_H = 1.0;
  cfg.sigma2_H = 1.0;
  cfg.mu_G = 0.0;
  cfg.sigma2_G = sigma2_G;
  cfg.C = capacity;
  cfg.measurement_model = default_measurement_model(2);
  cfg.prior = build_prior_from_rho(0.5);
  return cfg;
}

SystemConfig fronthaul_sweep_config(double capacity) {
  SystemConfig cfg = interference_sweep_config(0.0, capacity);
  cfg.prior = build_prior_from_rho(0.8);
  return cfg;
}

const char* to_string(SignalField field) {
  return field == SignalField::real ? "real" : "complex";
}

const char* to_string(VarianceModel model) {
  return model == VarianceModel::compound_poisson ? "compound_poisson" : "gain_variance_only";
}

const char* to_string(CrossCovarianceModel model) {
  return model == CrossCovarianceModel::binomial ? "binomial" : "poisson";
}

}  // namespace tbma
