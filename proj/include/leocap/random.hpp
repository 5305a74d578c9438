#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace leocap {

// SplitMix64 mixer. Used both as a seed-derivation hash and as the
// generator behind all stochastic sampling, so results are reproducible
// bit-for-bit across platforms (std::<distribution> output is
// implementation-defined and is deliberately avoided).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds a base seed with a path of indices into an independent stream seed,
// e.g. derive_seed(seed, {kTimelineTag, edge_id}).
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(base);
  for (std::uint64_t p : path) s = splitmix64(s ^ (p + 0x632be59bd9b4e019ULL));
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n) { return next_u64() % n; }

  // Exponential with the given mean; mean 0 yields 0.
  double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

 private:
  std::uint64_t state_;
};

}  // namespace leocap
