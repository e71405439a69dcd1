#ifndef COBI_RNG_HPP
#define COBI_RNG_HPP

#include <cstdint>

#include "cobi/types.hpp"

namespace cobi {

/// xoshiro256** with splitmix64 seeding.  Self-contained so that instance
/// generation is bit-reproducible: the standard library distributions are
/// implementation-defined and cannot be relied on across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal via Box-Muller (no rejection, deterministic draw count).
  double normal();

  Vector normal_vector(Eigen::Index n);
  Vector uniform_vector(Eigen::Index n, double lo, double hi);

  /// Derive an independent stream, e.g. per worker or per run index.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t state_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace cobi

#endif  // COBI_RNG_HPP
