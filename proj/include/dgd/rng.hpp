#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace dgd {

/// Portable seeded generator: std::mt19937_64 (whose output sequence is fixed
/// by the C++ standard) plus an explicit uniform and Box-Muller transform, so
/// that generated data does not depend on the standard library's
/// distribution implementations.
///
/// Independent arrays draw from independent streams: stream s of seed k is
/// seeded with splitmix64(k ^ splitmix64(s)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(stream_seed(seed, stream)) {}

  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal variate.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace dgd
