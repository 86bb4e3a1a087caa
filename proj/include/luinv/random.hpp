#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>

namespace luinv {

/// Seeded generator with a platform-independent output sequence.
///
/// The engine is std::mt19937_64, whose output is fixed by the standard.
/// Uniforms take the top 53 bits of each draw and normals use the
/// Box-Muller transform, so no implementation-defined std distribution is
/// involved: identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Complex normal with E|z|^2 = 1.
  std::complex<double> complex_normal();
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Per-trial seed derivation used by every randomized harness.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) { return seed + trial; }

}  // namespace luinv
