#pragma once

#include <cstdint>

namespace homodyne {

/// Counter-based deterministic random stream. Each (seed, index) pair opens an
/// independent stream, so shots can be generated in parallel with no shared
/// state. The core is the splitmix64 output function applied to a counter.
class ShotRng {
 public:
  ShotRng(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double next_double();

  /// Uniform double in (0, 1].
  double next_double_open_low() { return 1.0 - next_double(); }

  /// Standard normal deviate (Box-Muller).
  double next_gaussian();

  /// Exact Poisson sample for mean < 1e6 (inversion below 30, transformed
  /// rejection above); Gaussian approximation with rounding for larger means.
  std::uint64_t next_poisson(double mean);

 private:
  std::uint64_t counter_;
};

}  // namespace homodyne
