#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tbma/config.hpp"
#include "tbma/rng.hpp"

namespace tbma {

/// Matched-filter output of one EN in one collection interval. Real-field
/// runs keep the imaginary parts at zero.
struct ReceivedBlock {
  int cell = 0;
  std::uint64_t interval = 0;
  Eigen::VectorXcd y;
};

/// Blocks for all K cells plus the per-preamble device counts that produced them.
struct IntervalDraw {
  std::vector<ReceivedBlock> blocks;
  std::vector<std::vector<int>> counts;  // counts[c][m]: devices of cell c on preamble m
};

/// Draws one collection interval: Poisson activity per cell, categorical
/// measurements, independent in-cell and cross-cell gains for every device,
/// and thermal noise of variance 1/SNR. `rng.interval` and `rng.cell` are
/// ignored; `interval` selects the substream.
IntervalDraw sample_interval_detailed(const SystemConfig& config, const HypothesisVector& truth,
                                      std::uint64_t interval, const RngSeed& rng);

std::vector<ReceivedBlock> sample_interval(const SystemConfig& config, const HypothesisVector& truth,
                                           std::uint64_t interval, const RngSeed& rng);

/// Adds i.i.d. zero-mean field-Gaussian noise of variance sigma2_q per entry.
ReceivedBlock quantize_block(const ReceivedBlock& block, double sigma2_q, SignalField field,
                             const RngSeed& rng);

/// Concatenates per-cell blocks (cell order) into one K*M observation.
Eigen::VectorXcd stack_blocks(std::span<const ReceivedBlock> blocks);

struct MomentEstimate {
  Eigen::VectorXd mean;  // K*M stacked
  Eigen::MatrixXd cov;   // K*M x K*M, real part of the Hermitian sample covariance
  std::size_t samples = 0;
};

/// Sample mean and covariance of the stacked received vectors over n
/// independent intervals (trial index 0..n-1, interval 0).
MomentEstimate empirical_moments(const SystemConfig& config, const HypothesisVector& truth,
                                 std::size_t n, std::uint64_t seed);

/// Debug trace: header plus one row per (trial, interval, cell).
void write_trace_header(std::ostream& out, int M, SignalField field);
void write_trace_rows(std::ostream& out, std::uint64_t trial, std::span<const ReceivedBlock> blocks,
                      SignalField field);

}  // namespace tbma
