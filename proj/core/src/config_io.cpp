#include "tbma/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tbma/errors.hpp"

namespace tbma {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {
    "K",        "M",          "lambda",  "snr_db", "mu_H",
    "sigma2_H", "mu_G",       "sigma2_G", "C_bit_per_s_per_hz",
    "measurement_model", "prior", "signal_field", "variance_model",
    "cross_covariance", "description"};

template <typename T>
T read_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

SystemConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  for (const auto& item : j.items()) {
    if (!kKnownKeys.contains(item.key())) {
      throw ConfigError("unknown config field '" + item.key() + "'");
    }
  }

  SystemConfig cfg = interference_sweep_config();
  cfg.K = read_or(j, "K", cfg.K);
  cfg.M = read_or(j, "M", cfg.M);
  cfg.lambda = read_or(j, "lambda", cfg.lambda);
  cfg.snr = db_to_linear(read_or(j, "snr_db", linear_to_db(cfg.snr)));
  cfg.mu_H = read_or(j, "mu_H", cfg.mu_H);
  cfg.sigma2_H = read_or(j, "sigma2_H", cfg.sigma2_H);
  cfg.mu_G = read_or(j, "mu_G", cfg.mu_G);
  cfg.sigma2_G = read_or(j, "sigma2_G", cfg.sigma2_G);
  cfg.C = read_or(j, "C_bit_per_s_per_hz", cfg.C);

  if (j.contains("measurement_model")) {
    const auto& mm = j.at("measurement_model");
    if (!mm.is_array()) throw ConfigError("measurement_model must be an array");
    cfg.measurement_model.clear();
    for (const auto& cell : mm) {
      if (!cell.is_object() || !cell.contains("p0") || !cell.contains("p1")) {
        throw ConfigError("measurement_model entries need 'p0' and 'p1'");
      }
      cfg.measurement_model.push_back(
          {read_or<std::vector<double>>(cell, "p0", {}), read_or<std::vector<double>>(cell, "p1", {})});
    }
  } else if (cfg.K >= 1 && cfg.K <= 20) {
    cfg.measurement_model = default_measurement_model(cfg.K);
  }

  if (j.contains("prior")) {
    const auto& p = j.at("prior");
    if (p.contains("rho") && p.contains("table")) {
      throw ConfigError("prior takes either 'rho' or 'table', not both");
    }
    if (p.contains("rho")) {
      if (cfg.K != 2) throw ConfigError("prior.rho requires K = 2");
      cfg.prior = build_prior_from_rho(read_or(p, "rho", 0.5));
    } else if (p.contains("table")) {
      cfg.prior = QoIPrior{read_or<std::vector<double>>(p, "table", {}), std::nullopt};
    } else {
      throw ConfigError("prior needs 'rho' or 'table'");
    }
  } else if (cfg.K >= 1 && cfg.K <= 20) {
    cfg.prior = QoIPrior::uniform(cfg.K);
  }

  const auto field = read_or<std::string>(j, "signal_field", "real");
  if (field == "real") {
    cfg.signal_field = SignalField::real;
  } else if (field == "complex") {
    cfg.signal_field = SignalField::complex;
  } else {
    throw ConfigError("signal_field must be 'real' or 'complex'");
  }

  const auto variance = read_or<std::string>(j, "variance_model", "compound_poisson");
  if (variance == "compound_poisson") {
    cfg.variance_model = VarianceModel::compound_poisson;
  } else if (variance == "gain_variance_only") {
    cfg.variance_model = VarianceModel::gain_variance_only;
  } else {
    throw ConfigError("variance_model must be 'compound_poisson' or 'gain_variance_only'");
  }

  const auto cross = read_or<std::string>(j, "cross_covariance", "binomial");
  if (cross == "binomial") {
    cfg.cross_covariance = CrossCovarianceModel::binomial;
  } else if (cross == "poisson") {
    cfg.cross_covariance = CrossCovarianceModel::poisson;
  } else {
    throw ConfigError("cross_covariance must be 'binomial' or 'poisson'");
  }
  return cfg;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const SystemConfig& config) {
  json j;
  j["K"] = config.K;
  j["M"] = config.M;
  j["lambda"] = config.lambda;
  j["snr_db"] = linear_to_db(config.snr);
  j["mu_H"] = config.mu_H;
  j["sigma2_H"] = config.sigma2_H;
  j["mu_G"] = config.mu_G;
  j["sigma2_G"] = config.sigma2_G;
  j["C_bit_per_s_per_hz"] = config.C;
  j["measurement_model"] = json::array();
  for (const auto& cell : config.measurement_model) {
    j["measurement_model"].push_back({{"p0", cell.p0}, {"p1", cell.p1}});
  }
  if (config.prior.rho) {
    j["prior"] = {{"rho", *config.prior.rho}};
  } else {
    j["prior"] = {{"table", config.prior.table}};
  }
  j["signal_field"] = to_string(config.signal_field);
  j["variance_model"] = to_string(config.variance_model);
  j["cross_covariance"] = to_string(config.cross_covariance);
  return j.dump(2);
}

}  // namespace tbma
