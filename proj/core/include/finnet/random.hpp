#pragma once

#include <cstdint>
#include <random>

namespace finnet {

/// Portable random source: std::mt19937_64 (whose output sequence is fixed
/// by the C++ standard) plus explicitly defined transforms, so the same seed
/// yields the same draws on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// (next >> 11) · 2⁻⁵³, in [0, 1).
  double uniform();

  /// Uniform integer in [0, n) by rejection (no modulo bias). n > 0.
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via the basic Box–Muller transform:
  ///   u1 = 1 − uniform(), u2 = uniform(),
  ///   z0 = √(−2 ln u1)·cos(2π u2), z1 = √(−2 ln u1)·sin(2π u2),
  /// returning z0 then z1 from each pair.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finaliser; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace finnet
