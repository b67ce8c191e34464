#pragma once

#include <cstdint>

#include "homodyne/estimation.hpp"
#include "homodyne/rng.hpp"

namespace homodyne {

/// One stochastic realization of the compound measurement: Poisson photon
/// numbers at each output, Gaussian electron counts, instantaneous currents.
struct ShotSample {
  std::uint64_t photons1 = 0;
  std::uint64_t photons2 = 0;
  double electrons1 = 0.0;  // may be negative (full Gaussian, untruncated)
  double electrons2 = 0.0;
  double current1 = 0.0;    // e * electrons1 / tau_w
  double current2 = 0.0;
};

struct EnsembleStats {
  std::int64_t shots = 0;
  std::int64_t blocks = 0;
  double mean_current1 = 0.0;
  double mean_current2 = 0.0;
  double var_current1 = 0.0;   // per-shot current variance (unbiased)
  double var_current2 = 0.0;
  double estimator_mean = 0.0;  // radians, over block estimates
  double estimator_std = 0.0;   // radians, 0 when fewer than 2 usable blocks
  double clamp_fraction = 0.0;  // blocks clamped or oversaturated
};

ShotSample sample_shot(const HomodyneSetup& setup, ShotRng& rng);
ShotSample sample_shot(const HomodyneSetup& setup, std::uint64_t seed,
                       std::uint64_t index);

/// Runs `shots` independent shots from the counter-based stream (seed, index),
/// estimating the phase once per block of `block_size` averaged currents
/// (block_size = 0 means one block spanning the whole ensemble). Blocks whose
/// averaged current is oversaturated or negative are counted in clamp_fraction
/// and excluded from the estimator statistics; clamped-arcsin blocks are
/// counted and kept. Deterministic for a fixed seed.
EnsembleStats run_ensemble(const HomodyneSetup& setup, std::int64_t shots,
                           Protocol protocol, std::uint64_t seed,
                           std::int64_t block_size = 0);

}  // namespace homodyne
