#pragma once

#include <cstdint>

namespace dircheeger {

/// SplitMix64 generator with Box-Muller normals. Output depends only on the
/// seed, so results are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  double normal();

  /// Independent child stream; advances this generator by one step.
  Rng split();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dircheeger
