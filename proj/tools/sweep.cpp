#include "sweep.hpp"

#include <algorithm>

#include "csv.hpp"
#include "tbma/error_estimation.hpp"
#include "tbma/errors.hpp"
#include "tbma/exponents.hpp"
#include "tbma/parallel.hpp"

namespace tbma::harness {

namespace {

std::optional<double> mc_slope(const SystemConfig& config, const SweepSpec& spec, DetectionMode mode) {
  std::vector<ErrorRatePoint> points;
  for (int L : spec.mc_L) {
    points.push_back(to_rate_point(estimate_error_prob(config, L, spec.mc_trials, mode, spec.seed)));
  }
  try {
    return fit_exponent(points);
  } catch (const ConfigError&) {
    return std::nullopt;
  }
}

SweepRow evaluate_point(const SystemConfig& config, const SweepSpec& spec, double value,
                        std::optional<double> capacity) {
  SystemConfig cfg = apply_axis(config, spec.axis, value);
  if (capacity) cfg.C = *capacity;
  require_valid(cfg);

  SweepRow row;
  row.parameter = value;
  row.capacity = capacity;
  const bool cloud_available = cfg.K == 2 && cfg.C > 0.0;
  if (spec.modes.contains(SweepMode::edge)) {
    const auto r = edge_exponent(cfg);
    row.e_edge = r.exponent;
    row.alpha_edge = r.alpha_star;
  }
  if (spec.modes.contains(SweepMode::cloud) && cloud_available) {
    const auto r = cloud_exponent(cfg);
    row.e_cloud = r.exponent;
    row.alpha_cloud = r.alpha_star;
    row.sigma2_q = *std::max_element(r.sigma2_q.begin(), r.sigma2_q.end());
  }
  if (spec.modes.contains(SweepMode::montecarlo)) {
    row.mc_slope_edge = mc_slope(cfg, spec, DetectionMode::edge);
    if (cloud_available && spec.modes.contains(SweepMode::cloud)) {
      row.mc_slope_cloud = mc_slope(cfg, spec, DetectionMode::cloud);
    }
  }
  return row;
}

}  // namespace

bool is_sweep_axis(const std::string& axis) {
  return axis == "sigma2_G" || axis == "C" || axis == "rho" || axis == "lambda" || axis == "snr_db";
}

std::optional<SweepMode> parse_sweep_mode(const std::string& name) {
  if (name == "edge") return SweepMode::edge;
  if (name == "cloud") return SweepMode::cloud;
  if (name == "montecarlo") return SweepMode::montecarlo;
  return std::nullopt;
}

SystemConfig apply_axis(const SystemConfig& config, const std::string& axis, double value) {
  SystemConfig cfg = config;
  if (axis == "sigma2_G") {
    cfg.sigma2_G = value;
  } else if (axis == "C") {
    cfg.C = value;
  } else if (axis == "rho") {
    if (cfg.K != 2) throw ConfigError("rho axis requires K = 2");
    cfg.prior = build_prior_from_rho(value);
  } else if (axis == "lambda") {
    cfg.lambda = value;
  } else if (axis == "snr_db") {
    cfg.snr = db_to_linear(value);
  } else {
    throw ConfigError("unknown sweep axis '" + axis + "'");
  }
  return cfg;
}

void check_sweep(const SweepSpec& spec) {
  if (!is_sweep_axis(spec.axis)) throw ConfigError("unknown sweep axis '" + spec.axis + "'");
  if (spec.grid.empty()) throw ConfigError("empty sweep grid");
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > spec.grid[i - 1])) throw ConfigError("sweep grid must be strictly increasing");
  }
  if (spec.modes.empty()) throw ConfigError("no sweep modes selected");
  if (!spec.capacities.empty() && spec.axis != "sigma2_G") {
    throw ConfigError("capacity repeat list is only valid with axis sigma2_G");
  }
  if (spec.modes.contains(SweepMode::montecarlo) && spec.mc_trials < 100) {
    throw ConfigError("need at least 100 trials");
  }
}

std::vector<SweepRow> run_exponent_sweep(const SystemConfig& config, const SweepSpec& spec,
                                         unsigned threads) {
  check_sweep(spec);
  std::vector<std::optional<double>> capacities;
  if (spec.capacities.empty()) {
    capacities.push_back(std::nullopt);
  } else {
    capacities.assign(spec.capacities.begin(), spec.capacities.end());
  }
  const std::size_t n = capacities.size() * spec.grid.size();
  std::vector<SweepRow> rows(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto& cap = capacities[i / spec.grid.size()];
    rows[i] = evaluate_point(config, spec, spec.grid[i % spec.grid.size()], cap);
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const bool with_capacity = !spec.capacities.empty();
  const bool with_mc = spec.modes.contains(SweepMode::montecarlo);
  if (with_capacity) out << "C,";
  out << spec.axis << ",E_edge_nats,E_cloud_nats,alpha_star_edge,alpha_star_cloud,sigma2_q";
  if (with_mc) out << ",mc_slope_edge,mc_slope_cloud";
  out << '\n';
  for (const auto& r : rows) {
    if (with_capacity) out << format_number(r.capacity) << ',';
    out << format_number(r.parameter) << ',' << format_number(r.e_edge) << ','
        << format_number(r.e_cloud) << ',' << format_number(r.alpha_edge) << ','
        << format_number(r.alpha_cloud) << ',' << format_number(r.sigma2_q);
    if (with_mc) out << ',' << format_number(r.mc_slope_edge) << ',' << format_number(r.mc_slope_cloud);
    out << '\n';
  }
}

}  // namespace tbma::harness
