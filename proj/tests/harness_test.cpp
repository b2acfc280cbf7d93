#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "csv.hpp"
#include "sweep.hpp"

namespace tbma::harness {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tbma");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kConfig = std::string(TBMA_CONFIG_DIR) + "/interference_sweep.json";

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST(Cli, Fig3HeaderAndRowCount) {
  const auto r = run({"reproduce-fig3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "C,E_edge_nats,E_cloud_nats,alpha_star_edge,alpha_star_cloud,sigma2_q");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 8);
}

TEST(Cli, Fig2RepeatsPerCapacity) {
  const auto r = run({"reproduce-fig2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "C,sigma2_G,E_edge_nats,E_cloud_nats,alpha_star_edge,alpha_star_cloud,sigma2_q");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 3 * 8);
}

TEST(Cli, SweepIsDeterministic) {
  const std::vector<std::string> args{"exponent-sweep", "--axis", "rho", "--grid", "0.1,0.5,0.9", "--seed", "5", "--config", kConfig};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SimulateFooterAndDeterminism) {
  const std::vector<std::string> args{"simulate", "--L", "1,2,3", "--trials", "300", "--seed", "9", "--config", kConfig};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(first_line(a.out), "mode,L,trials,p_hat,ci_lo,ci_hi,seed");
  EXPECT_NE(a.out.find("# fitted_slope="), std::string::npos);
  EXPECT_NE(a.out.find(",analytic_exponent="), std::string::npos);
}

TEST(Cli, SimulateThreadCountDoesNotChangeOutput) {
  const auto a = run({"simulate", "--L", "1,2", "--trials", "400", "--threads", "1", "--config", kConfig});
  const auto b = run({"simulate", "--L", "1,2", "--trials", "400", "--threads", "3", "--config", kConfig});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"simulate", "--trials", "99", "--config", kConfig}).code, 2);
  const auto empty = run({"exponent-sweep", "--axis", "C", "--grid", "", "--config", kConfig});
  EXPECT_EQ(empty.code, 2);
  EXPECT_NE(empty.err.find("empty sweep grid"), std::string::npos);
  EXPECT_EQ(run({"exponent-sweep", "--axis", "nope", "--grid", "1", "--config", kConfig}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, MissingConfigIsRuntimeFailure) {
  EXPECT_EQ(run({"validate", "--config", "/nonexistent.json"}).code, 1);
}

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(format_number(std::nullopt), "nan");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333");
}

TEST(Sweep, CloudColumnsMissingForSingleCell) {
  SystemConfig cfg = interference_sweep_config();
  cfg.K = 1;
  cfg.measurement_model = default_measurement_model(1);
  cfg.prior = QoIPrior::uniform(1);
  SweepSpec spec;
  spec.axis = "lambda";
  spec.grid = {1.0, 2.0};
  const auto rows = run_exponent_sweep(cfg, spec, 1);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_TRUE(rows[0].e_edge);
  EXPECT_FALSE(rows[0].e_cloud);
}

TEST(Sweep, ApplyAxis) {
  const auto cfg = interference_sweep_config();
  EXPECT_NEAR(apply_axis(cfg, "snr_db", 10.0).snr, 10.0, 1e-12);
  EXPECT_NEAR(apply_axis(cfg, "rho", 0.8).prior.table[0], 0.4, 1e-15);
  EXPECT_EQ(apply_axis(cfg, "C", 3.0).C, 3.0);
  EXPECT_FALSE(is_sweep_axis("M"));
}

}  // namespace
}  // namespace tbma::harness
