#pragma once

#include <cstdint>
#include <random>

namespace tbma {

/// Independent draw streams within one (trial, interval, cell) coordinate.
enum class Stream : std::uint64_t {
  truth = 1,
  activation = 2,
  measurement = 3,
  channel = 4,
  noise = 5,
  quantization = 6,
};

/// Root seed plus the substream label. Identical values reproduce identical
/// draws on one build.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t interval = 0;
  std::uint64_t cell = 0;
};

std::mt19937_64 make_engine(const RngSeed& rng, Stream stream);

}  // namespace tbma
