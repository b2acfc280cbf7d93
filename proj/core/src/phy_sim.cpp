#include "tbma/phy_sim.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "tbma/errors.hpp"

namespace tbma {

namespace {

std::complex<double> field_gaussian(double mean, double variance, SignalField field,
                                    std::mt19937_64& engine) {
  std::normal_distribution<double> unit(0.0, 1.0);
  if (field == SignalField::real) return {mean + std::sqrt(variance) * unit(engine), 0.0};
  const double s = std::sqrt(0.5 * variance);
  const double re = mean + s * unit(engine);
  const double im = s * unit(engine);
  return {re, im};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

IntervalDraw sample_interval_detailed(const SystemConfig& config, const HypothesisVector& truth,
                                      std::uint64_t interval, const RngSeed& rng) {
  if (truth.size() != config.K) throw ConfigError("truth length must equal K");
  const RngSeed base{rng.seed, rng.trial, interval, 0};
  auto activation = make_engine(base, Stream::activation);
  auto measurement = make_engine(base, Stream::measurement);
  auto channel = make_engine(base, Stream::channel);
  auto noise = make_engine(base, Stream::noise);

  const auto K = static_cast<std::size_t>(config.K);
  const int M = config.M;
  IntervalDraw draw;
  draw.blocks.resize(K);
  draw.counts.assign(K, std::vector<int>(static_cast<std::size_t>(M), 0));
  for (std::size_t c = 0; c < K; ++c) {
    draw.blocks[c].cell = static_cast<int>(c);
    draw.blocks[c].interval = interval;
    draw.blocks[c].y = Eigen::VectorXcd::Zero(M);
  }

  std::poisson_distribution<int> active(config.lambda);
  for (std::size_t src = 0; src < K; ++src) {
    const int devices = active(activation);
    const auto& p = config.distribution(static_cast<int>(src), truth[static_cast<int>(src)]);
    std::discrete_distribution<int> pick(p.begin(), p.end());
    for (int i = 0; i < devices; ++i) {
      const int x = pick(measurement);
      ++draw.counts[src][static_cast<std::size_t>(x)];
      // Same measurement index reaches every EN, each through its own channel.
      for (std::size_t en = 0; en < K; ++en) {
        const bool own = en == src;
        draw.blocks[en].y(x) += field_gaussian(own ? config.mu_H : config.mu_G,
                                               own ? config.sigma2_H : config.sigma2_G,
                                               config.signal_field, channel);
      }
    }
  }

  const double noise_var = config.noise_variance();
  for (std::size_t en = 0; en < K; ++en) {
    for (int m = 0; m < M; ++m) {
      draw.blocks[en].y(m) += field_gaussian(0.0, noise_var, config.signal_field, noise);
    }
  }
  return draw;
}

std::vector<ReceivedBlock> sample_interval(const SystemConfig& config, const HypothesisVector& truth,
                                           std::uint64_t interval, const RngSeed& rng) {
  return sample_interval_detailed(config, truth, interval, rng).blocks;
}

ReceivedBlock quantize_block(const ReceivedBlock& block, double sigma2_q, SignalField field,
                             const RngSeed& rng) {
  if (!(sigma2_q > 0.0)) throw ConfigError("quantization noise variance must be positive");
  auto engine = make_engine(rng, Stream::quantization);
  ReceivedBlock out = block;
  for (Eigen::Index m = 0; m < out.y.size(); ++m) {
    out.y(m) += field_gaussian(0.0, sigma2_q, field, engine);
  }
  return out;
}

Eigen::VectorXcd stack_blocks(std::span<const ReceivedBlock> blocks) {
  Eigen::Index total = 0;
  for (const auto& b : blocks) total += b.y.size();
  Eigen::VectorXcd out(total);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    out.segment(offset, b.y.size()) = b.y;
    offset += b.y.size();
  }
  return out;
}

MomentEstimate empirical_moments(const SystemConfig& config, const HypothesisVector& truth,
                                 std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ConfigError("need at least two samples");
  const Eigen::Index D = static_cast<Eigen::Index>(config.K) * config.M;
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(D);
  Eigen::MatrixXcd outer = Eigen::MatrixXcd::Zero(D, D);
  for (std::size_t i = 0; i < n; ++i) {
    const auto blocks = sample_interval(config, truth, 0, RngSeed{seed, i, 0, 0});
    const Eigen::VectorXcd y = stack_blocks(blocks);
    sum += y;
    outer.noalias() += y * y.adjoint();
  }
  const double count = static_cast<double>(n);
  const Eigen::VectorXcd mean = sum / count;
  const Eigen::MatrixXcd cov = (outer - count * mean * mean.adjoint()) / (count - 1.0);
  return {mean.real(), cov.real(), n};
}

void write_trace_header(std::ostream& out, int M, SignalField field) {
  out << "trial,interval,cell";
  for (int m = 1; m <= M; ++m) {
    if (field == SignalField::real) {
      out << ",y" << m;
    } else {
      out << ",y" << m << "_re,y" << m << "_im";
    }
  }
  out << '\n';
}

void write_trace_rows(std::ostream& out, std::uint64_t trial, std::span<const ReceivedBlock> blocks,
                      SignalField field) {
  for (const auto& b : blocks) {
    out << trial << ',' << b.interval << ',' << (b.cell + 1);
    for (Eigen::Index m = 0; m < b.y.size(); ++m) {
      out << ',' << format_double(b.y(m).real());
      if (field == SignalField::complex) out << ',' << format_double(b.y(m).imag());
    }
    out << '\n';
  }
}

}  // namespace tbma
