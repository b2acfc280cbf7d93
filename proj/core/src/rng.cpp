#include "tbma/rng.hpp"

namespace tbma {

namespace {

// SplitMix64 finalizer.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

}  // namespace

std::mt19937_64 make_engine(const RngSeed& rng, Stream stream) {
  std::uint64_t h = mix(rng.seed);
  h = mix(h ^ rng.trial);
  h = mix(h ^ rng.interval);
  h = mix(h ^ rng.cell);
  h = mix(h ^ static_cast<std::uint64_t>(stream));
  return std::mt19937_64(h);
}

}  // namespace tbma
