#include "homodyne/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace homodyne {

namespace {

struct DetectorDraw {
  std::uint64_t photons;
  double electrons;
  double current;
};

DetectorDraw draw_detector(const DetectorModel& det, double mean_photons,
                           ShotRng& rng) {
  const std::uint64_t n = rng.next_poisson(mean_photons);
  const double mu = mean_electrons(det, static_cast<double>(n));
  const double sigma = det.sigma().width(mu);
  const double k = sigma == 0.0 ? mu : mu + sigma * rng.next_gaussian();
  return DetectorDraw{n, k, kElectronCharge * k / det.tau_w()};
}

}  // namespace

ShotSample sample_shot(const HomodyneSetup& setup, ShotRng& rng) {
  const MixedPair mixed = mix_on_beam_splitter(setup.signal, setup.lo);
  const DetectorDraw d1 = draw_detector(setup.det1, mixed.photons1(), rng);
  const DetectorDraw d2 = draw_detector(setup.det2, mixed.photons2(), rng);
  return ShotSample{d1.photons, d2.photons, d1.electrons, d2.electrons,
                    d1.current, d2.current};
}

ShotSample sample_shot(const HomodyneSetup& setup, std::uint64_t seed,
                       std::uint64_t index) {
  ShotRng rng(seed, index);
  return sample_shot(setup, rng);
}

EnsembleStats run_ensemble(const HomodyneSetup& setup, std::int64_t shots,
                           Protocol protocol, std::uint64_t seed,
                           std::int64_t block_size) {
  if (shots < 2) {
    throw std::invalid_argument("run_ensemble: shots must be >= 2 (variance undefined)");
  }
  if (block_size == 0) block_size = shots;
  if (block_size < 1 || shots % block_size != 0) {
    throw std::invalid_argument("run_ensemble: block_size must divide shots");
  }

  double sum1 = 0.0, sum2 = 0.0, sumsq1 = 0.0, sumsq2 = 0.0;
  double block_sum1 = 0.0, block_sum2 = 0.0;
  std::vector<double> estimates;
  std::int64_t clamped_blocks = 0;
  const std::int64_t n_blocks = shots / block_size;
  estimates.reserve(static_cast<std::size_t>(n_blocks));

  for (std::int64_t i = 0; i < shots; ++i) {
    const ShotSample s = sample_shot(setup, seed, static_cast<std::uint64_t>(i));
    sum1 += s.current1;
    sum2 += s.current2;
    sumsq1 += s.current1 * s.current1;
    sumsq2 += s.current2 * s.current2;
    block_sum1 += s.current1;
    block_sum2 += s.current2;

    if ((i + 1) % block_size == 0 && setup.signal.magnitude() > 0.0) {
      MeasurementRecord record{block_sum1 / static_cast<double>(block_size),
                               block_sum2 / static_cast<double>(block_size),
                               block_size};
      block_sum1 = block_sum2 = 0.0;
      if (record.current1 < 0.0 || record.current2 < 0.0) {
        ++clamped_blocks;  // negative averaged current: not invertible
        continue;
      }
      try {
        const EstimateReport report =
            protocol == Protocol::Linear
                ? estimate_phase_linear(record, setup)
                : estimate_phase_nonlinear(record, setup);
        if (report.clamped) ++clamped_blocks;
        estimates.push_back(report.phase_estimate);
      } catch (const OversaturatedError&) {
        ++clamped_blocks;
      }
    }
  }

  EnsembleStats stats;
  stats.shots = shots;
  stats.blocks = n_blocks;
  const double m = static_cast<double>(shots);
  stats.mean_current1 = sum1 / m;
  stats.mean_current2 = sum2 / m;
  stats.var_current1 =
      (sumsq1 - m * stats.mean_current1 * stats.mean_current1) / (m - 1.0);
  stats.var_current2 =
      (sumsq2 - m * stats.mean_current2 * stats.mean_current2) / (m - 1.0);
  if (stats.var_current1 < 0.0) stats.var_current1 = 0.0;
  if (stats.var_current2 < 0.0) stats.var_current2 = 0.0;

  if (!estimates.empty()) {
    double esum = 0.0;
    for (double e : estimates) esum += e;
    stats.estimator_mean = esum / static_cast<double>(estimates.size());
    if (estimates.size() >= 2) {
      double ss = 0.0;
      for (double e : estimates) {
        const double d = e - stats.estimator_mean;
        ss += d * d;
      }
      stats.estimator_std =
          std::sqrt(ss / static_cast<double>(estimates.size() - 1));
    }
  }
  stats.clamp_fraction =
      static_cast<double>(clamped_blocks) / static_cast<double>(n_blocks);
  return stats;
}

}  // namespace homodyne
