#include <benchmark/benchmark.h>

#include "tbma/chernoff.hpp"
#include "tbma/detectors.hpp"
#include "tbma/exponents.hpp"
#include "tbma/phy_sim.hpp"
#include "tbma/quantization.hpp"

namespace {

using namespace tbma;

void BM_ChernoffInformationCloud(benchmark::State& state) {
  auto cfg = interference_sweep_config(1.0);
  cfg.mu_G = 0.5;
  cfg.M = static_cast<int>(state.range(0));
  std::vector<double> p(static_cast<std::size_t>(cfg.M), 1.0 / cfg.M);
  p[0] += 0.5 / cfg.M;
  p[1] -= 0.5 / cfg.M;
  std::vector<double> r(p.rbegin(), p.rend());
  cfg.measurement_model = {{p, r}, {p, r}};
  const std::vector<double> q{0.1, 0.1};
  const auto g0 = cloud_surrogate(cfg, HypothesisVector({0, 0}), q);
  const auto g1 = cloud_surrogate(cfg, HypothesisVector({1, 0}), q);
  for (auto _ : state) benchmark::DoNotOptimize(chernoff_information(g0, g1));
}
BENCHMARK(BM_ChernoffInformationCloud)->Arg(2)->Arg(8)->Arg(32);

void BM_EdgeExponent(benchmark::State& state) {
  const auto cfg = interference_sweep_config(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(edge_exponent(cfg));
}
BENCHMARK(BM_EdgeExponent);

void BM_CloudExponent(benchmark::State& state) {
  const auto cfg = interference_sweep_config(2.0, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(cloud_exponent(cfg));
}
BENCHMARK(BM_CloudExponent);

void BM_SolveQuantizationNoise(benchmark::State& state) {
  const auto cfg = fronthaul_sweep_config(6.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_quantization_noise(cfg, 0));
}
BENCHMARK(BM_SolveQuantizationNoise);

void BM_SampleInterval(benchmark::State& state) {
  auto cfg = interference_sweep_config(1.0);
  cfg.lambda = static_cast<double>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_interval(cfg, HypothesisVector({0, 1}), 0, RngSeed{1, trial++, 0, 0}));
  }
}
BENCHMARK(BM_SampleInterval)->Arg(4)->Arg(50)->Arg(500);

void BM_EdgeDetector(benchmark::State& state) {
  const auto cfg = interference_sweep_config(1.0);
  const EdgeMapDetector det(cfg, 0);
  std::vector<ReceivedBlock> blocks;
  for (std::uint64_t l = 0; l < 10; ++l) {
    auto b = sample_interval(cfg, HypothesisVector({0, 1}), l, RngSeed{2, 0, 0, 0});
    blocks.insert(blocks.end(), b.begin(), b.end());
  }
  for (auto _ : state) benchmark::DoNotOptimize(det.detect(blocks));
}
BENCHMARK(BM_EdgeDetector);

void BM_CloudDetector(benchmark::State& state) {
  const auto cfg = interference_sweep_config(1.0);
  const std::vector<double> q{0.2, 0.2};
  const CloudMapDetector det(cfg, q);
  std::vector<Eigen::VectorXcd> stacked;
  for (std::uint64_t l = 0; l < 10; ++l) {
    stacked.push_back(stack_blocks(sample_interval(cfg, HypothesisVector({0, 1}), l, RngSeed{3, 0, 0, 0})));
  }
  for (auto _ : state) benchmark::DoNotOptimize(det.detect(stacked));
}
BENCHMARK(BM_CloudDetector);

void BM_ExactLikelihood(benchmark::State& state) {
  SystemConfig cfg;
  cfg.K = 1;
  cfg.M = 2;
  cfg.lambda = 0.5;
  cfg.measurement_model = default_measurement_model(1);
  cfg.prior = QoIPrior::uniform(1);
  const auto blocks = sample_interval(cfg, HypothesisVector({1}), 0, RngSeed{4, 0, 0, 0});
  const int n_max = default_truncation(cfg.lambda);
  for (auto _ : state) benchmark::DoNotOptimize(exact_small_lambda_likelihood(blocks[0], cfg, 1, n_max));
}
BENCHMARK(BM_ExactLikelihood);

}  // namespace

BENCHMARK_MAIN();
