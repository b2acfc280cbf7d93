#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "tbma/config.hpp"

namespace tbma::harness {

enum class SweepMode { edge, cloud, montecarlo };

/// One exponent sweep over a scalar SystemConfig field.
struct SweepSpec {
  std::string axis;  // sigma2_G | C | rho | lambda | snr_db
  std::vector<double> grid;
  std::set<SweepMode> modes{SweepMode::edge, SweepMode::cloud};
  // Repeats the sweep once per fronthaul capacity; only with axis = sigma2_G.
  std::vector<double> capacities;
  // Monte Carlo settings, used when modes contains montecarlo.
  std::vector<int> mc_L{1, 2, 5, 10};
  std::int64_t mc_trials = 10000;
  std::uint64_t seed = 1;
};

struct SweepRow {
  double parameter = 0.0;
  std::optional<double> capacity;
  std::optional<double> e_edge;
  std::optional<double> e_cloud;
  std::optional<double> alpha_edge;
  std::optional<double> alpha_cloud;
  std::optional<double> sigma2_q;  // largest over ENs
  std::optional<double> mc_slope_edge;
  std::optional<double> mc_slope_cloud;
};

bool is_sweep_axis(const std::string& axis);
std::optional<SweepMode> parse_sweep_mode(const std::string& name);

/// Copy of `config` with `axis` set to `value` (snr_db in dB, rho rebuilds
/// the two-cell prior).
SystemConfig apply_axis(const SystemConfig& config, const std::string& axis, double value);

/// Throws ConfigError("empty sweep grid") and friends for invalid specs.
void check_sweep(const SweepSpec& spec);

/// Rows in grid order (grouped by capacity when a repeat list is given).
/// Grid points run on up to `threads` workers; the result is independent
/// of the thread count.
std::vector<SweepRow> run_exponent_sweep(const SystemConfig& config, const SweepSpec& spec,
                                         unsigned threads);

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace tbma::harness
