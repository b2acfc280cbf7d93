#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "csv.hpp"
#include "sweep.hpp"
#include "tbma/config_io.hpp"
#include "tbma/error_estimation.hpp"
#include "tbma/errors.hpp"
#include "tbma/exponents.hpp"
#include "tbma/phy_sim.hpp"
#include "tbma/surrogate.hpp"

namespace tbma::harness {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Thrown for argument problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_config) {
  auto* cfg = cmd->add_option("--config", opts.config_path, "Scenario JSON file");
  if (needs_config) cfg->required();
  cmd->add_option("--seed", opts.seed, "Root random seed");
  cmd->add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts.out_path, "Output CSV path (default: stdout)");
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !is.eof()) throw UsageError(std::string("cannot parse ") + what + " value '" + item + "'");
    values.push_back(v);
  }
  return values;
}

// Writes to --out or `out`. Content is assembled first so a failing run
// leaves no partial file.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  file << content;
  if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

SystemConfig config_or(const std::string& path, const SystemConfig& fallback) {
  return path.empty() ? fallback : load_config(path);
}

// ---- exponent-sweep / reproduce-* ---------------------------------------

struct SweepArgs {
  std::string axis;
  std::string grid;
  std::string modes = "edge,cloud";
  std::string capacities;
  std::string mc_L = "1,2,5,10";
  std::int64_t mc_trials = 10000;
};

SweepSpec build_spec(const SweepArgs& a, std::uint64_t seed) {
  SweepSpec spec;
  spec.axis = a.axis;
  spec.grid = parse_list<double>(a.grid, "grid");
  spec.modes.clear();
  for (const auto& name : parse_list<std::string>(a.modes, "mode")) {
    const auto mode = parse_sweep_mode(name);
    if (!mode) throw UsageError("unknown sweep mode '" + name + "'");
    spec.modes.insert(*mode);
  }
  spec.capacities = parse_list<double>(a.capacities, "capacity");
  spec.mc_L = parse_list<int>(a.mc_L, "L");
  spec.mc_trials = a.mc_trials;
  spec.seed = seed;
  try {
    check_sweep(spec);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return spec;
}

int run_sweep(const SystemConfig& config, const SweepSpec& spec, const CommonOptions& opts, std::ostream& out) {
  const auto rows = run_exponent_sweep(config, spec, opts.threads);
  std::ostringstream csv;
  write_sweep_csv(csv, spec, rows);
  emit(opts.out_path, csv.str(), out);
  return kExitOk;
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
  std::string L = "1,2,5,10,20";
  std::int64_t trials = 10000;
  std::string mode = "edge";
  std::string trace_path;
  std::int64_t trace_trials = 10;
};

int run_simulate(const CommonOptions& opts, const SimulateArgs& a, std::ostream& out) {
  const auto L_grid = parse_list<int>(a.L, "L");
  if (L_grid.empty()) throw UsageError("empty L grid");
  if (std::any_of(L_grid.begin(), L_grid.end(), [](int L) { return L < 1; })) {
    throw UsageError("L values must be positive");
  }
  if (a.trials < 100) throw UsageError("need at least 100 trials");
  DetectionMode mode;
  if (a.mode == "edge") {
    mode = DetectionMode::edge;
  } else if (a.mode == "cloud") {
    mode = DetectionMode::cloud;
  } else {
    throw UsageError("mode must be 'edge' or 'cloud'");
  }

  const SystemConfig config = load_config(opts.config_path);
  require_valid(config);

  std::ostringstream csv;
  write_error_prob_header(csv);
  std::vector<ErrorRatePoint> points;
  for (int L : L_grid) {
    const auto est = estimate_error_prob(config, L, a.trials, mode, opts.seed, opts.threads);
    write_error_prob_row(csv, mode, est, opts.seed);
    points.push_back(to_rate_point(est));
  }

  std::optional<double> slope;
  try {
    slope = fit_exponent(points);
  } catch (const ConfigError&) {
  }
  const double analytic =
      mode == DetectionMode::edge ? edge_exponent(config).exponent : cloud_exponent(config).exponent;
  csv << "# fitted_slope=" << format_number(slope) << ",analytic_exponent=" << format_number(analytic)
      << '\n';
  emit(opts.out_path, csv.str(), out);

  if (!a.trace_path.empty()) {
    std::ostringstream trace;
    write_trace_header(trace, config.M, config.signal_field);
    const int L = *std::max_element(L_grid.begin(), L_grid.end());
    for (std::int64_t t = 0; t < std::min(a.trace_trials, a.trials); ++t) {
      const auto trial = static_cast<std::uint64_t>(t);
      const auto truth = draw_truth(config, opts.seed, trial);
      for (int l = 0; l < L; ++l) {
        const auto blocks = sample_interval(config, truth, static_cast<std::uint64_t>(l), RngSeed{opts.seed, trial, 0, 0});
        write_trace_rows(trace, trial, blocks, config.signal_field);
      }
    }
    emit(a.trace_path, trace.str(), out);
  }
  return kExitOk;
}

// ---- validate ------------------------------------------------------------

struct ValidateArgs {
  std::int64_t samples = 20000;
};

int run_validate(const CommonOptions& opts, const ValidateArgs& a, std::ostream& out) {
  const SystemConfig config = load_config(opts.config_path);
  std::ostringstream report;
  bool ok = true;
  const auto violations = validate_config(config);
  if (violations.empty()) {
    report << "PASS config invariants\n";
  } else {
    ok = false;
    for (const auto& v : violations) report << "FAIL " << v.field << ": " << v.message << '\n';
  }

  if (violations.empty()) {
    if (a.samples < 2) throw UsageError("need at least 2 samples");
    // Moments of a Poisson sum are exact, so the only slack is Monte Carlo
    // error; the tolerance mirrors the CLT regime of the operating point.
    const double tol = config.lambda >= 50.0 ? 0.05 : 0.10;
    const auto n = static_cast<std::size_t>(a.samples);
    for (std::size_t i = 0; i < hypothesis_count(config.K); ++i) {
      const auto k = HypothesisVector::from_index(config.K, i);
      const auto est = empirical_moments(config, k, n, opts.seed + i);
      for (int c = 0; c < config.K; ++c) {
        const auto g = edge_surrogate(config, c, k);
        double worst_mean = 0.0;
        double worst_var = 0.0;
        bool pass = true;
        for (int m = 0; m < config.M; ++m) {
          const Eigen::Index idx = c * config.M + m;
          const double var = g.cov(m, m);
          const double se_mean = std::sqrt(var / static_cast<double>(n));
          const double err_mean = std::abs(est.mean(idx) - g.mean(m));
          if (std::abs(g.mean(m)) > 1e-12) {
            worst_mean = std::max(worst_mean, err_mean / std::abs(g.mean(m)));
            pass = pass && err_mean <= tol * std::abs(g.mean(m)) + 4.0 * se_mean;
          } else {
            pass = pass && err_mean <= 4.0 * se_mean;
          }
          const double err_var = std::abs(est.cov(idx, idx) - var) / var;
          worst_var = std::max(worst_var, err_var);
          pass = pass && err_var <= tol;
        }
        ok = ok && pass;
        char line[200];
        std::snprintf(line, sizeof line,
                      "%s moments k=%s cell %d (max rel err mean %.4f, variance %.4f, tol %.2f)\n",
                      pass ? "PASS" : "FAIL", k.to_string().c_str(), c + 1, worst_mean, worst_var, tol);
        report << line;
      }
    }
  }
  emit(opts.out_path, report.str(), out);
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge/cloud detection error exponents for multi-cell type-based multiple access"};
  app.require_subcommand(1);

  CommonOptions opts;

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("exponent-sweep", "Analytical exponents along one parameter axis");
  add_common(sweep, opts, true);
  sweep->add_option("--axis", sweep_args.axis, "sigma2_G | C | rho | lambda | snr_db")->required();
  sweep->add_option("--grid", sweep_args.grid, "Comma-separated, strictly increasing values")->required();
  sweep->add_option("--modes", sweep_args.modes, "Subset of edge,cloud,montecarlo");
  sweep->add_option("--capacities", sweep_args.capacities, "Repeat a sigma2_G sweep per capacity C");
  sweep->add_option("--mc-L", sweep_args.mc_L, "L grid for montecarlo mode");
  sweep->add_option("--mc-trials", sweep_args.mc_trials, "Trials per L for montecarlo mode");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo joint error probability versus L");
  add_common(simulate, opts, true);
  simulate->add_option("--L", sim_args.L, "Comma-separated L grid");
  simulate->add_option("--trials", sim_args.trials, "Trials per L (>= 100)");
  simulate->add_option("--mode", sim_args.mode, "edge | cloud");
  simulate->add_option("--trace", sim_args.trace_path, "Write sampled blocks of the first trials to CSV");
  simulate->add_option("--trace-trials", sim_args.trace_trials, "Number of trials to trace");

  ValidateArgs val_args;
  auto* validate = app.add_subcommand("validate", "Config invariants and surrogate moment checks");
  add_common(validate, opts, true);
  validate->add_option("--samples", val_args.samples, "Intervals per hypothesis for moment checks");

  auto* fig2 = app.add_subcommand("reproduce-fig2", "Exponents versus sigma2_G for several capacities");
  add_common(fig2, opts, false);
  auto* fig3 = app.add_subcommand("reproduce-fig3", "Exponents versus fronthaul capacity C");
  add_common(fig3, opts, false);

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*sweep) {
      const auto spec = build_spec(sweep_args, opts.seed);
      return run_sweep(load_config(opts.config_path), spec, opts, out);
    }
    if (*simulate) return run_simulate(opts, sim_args, out);
    if (*validate) return run_validate(opts, val_args, out);
    if (*fig2) {
      SweepArgs a;
      a.axis = "sigma2_G";
      a.grid = "0,0.5,1,2,5,10,100,1000";
      a.capacities = "1,2,4";
      return run_sweep(config_or(opts.config_path, interference_sweep_config()), build_spec(a, opts.seed), opts, out);
    }
    if (*fig3) {
      SweepArgs a;
      a.axis = "C";
      a.grid = "0.5,1,2,4,6,8,12";
      return run_sweep(config_or(opts.config_path, fronthaul_sweep_config()), build_spec(a, opts.seed), opts, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace tbma::harness
