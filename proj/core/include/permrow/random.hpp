#pragma once

#include <cstdint>
#include <random>

#include "permrow/matrix_core.hpp"

namespace permrow {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Per-trial seed: splitmix64(master + (trial + 1) * 0x9E3779B97F4A7C15).
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t trial) noexcept;

/// Random stream with pinned variate algorithms so draws are reproducible
/// across platforms and standard libraries. The engine is std::mt19937_64,
/// whose output sequence the C++ standard fixes; the variate transforms do
/// not go through the implementation-defined <random> distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits: (x >> 11) * 2^-53.
  double uniform01();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer on [0, bound) by rejection of the biased tail.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Standard normal by the Marsaglia polar method; the spare variate is
  /// cached and returned by the next call.
  double normal();

  /// Uniformly random permutation by Fisher-Yates, swapping from the back.
  Permutation permutation(std::size_t size);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace permrow
