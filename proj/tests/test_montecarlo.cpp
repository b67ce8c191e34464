#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "homodyne/montecarlo.hpp"
#include "homodyne/rng.hpp"

using namespace homodyne;

namespace {

HomodyneSetup desk_setup(double sigma, double chi = 0.01, double alpha_sq = 1e3,
                         double beta_sq = 1e2) {
  DetectorModel det(1e3, 1e4, NoiseWidthSpec{NoiseWidthMode::Constant, sigma},
                    1e-4);
  return HomodyneSetup(CoherentField(std::sqrt(alpha_sq), chi),
                       CoherentField(std::sqrt(beta_sq), 0.0), det, det);
}

// Two-sample Kolmogorov-Smirnov p-value (asymptotic).
double ks_p_value(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i; else ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  const double en = std::sqrt(na * nb / (na + nb));
  const double lambda = (en + 0.12 + 0.11 / en) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    p += 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

TEST_CASE("shot samples are reproducible from (seed, index)") {
  HomodyneSetup setup = desk_setup(10.0);
  for (std::uint64_t i = 0; i < 50; ++i) {
    ShotSample a = sample_shot(setup, 77, i);
    ShotSample b = sample_shot(setup, 77, i);
    CHECK(a.photons1 == b.photons1);
    CHECK(a.electrons2 == b.electrons2);
    CHECK(a.current1 == kElectronCharge * a.electrons1 / setup.det1.tau_w());
  }
  ShotSample c = sample_shot(setup, 78, 0);
  ShotSample d = sample_shot(setup, 77, 0);
  CHECK((c.photons1 != d.photons1 || c.electrons1 != d.electrons1));
}

TEST_CASE("noiseless detector gives deterministic electrons given photons") {
  HomodyneSetup setup = desk_setup(0.0);
  for (std::uint64_t i = 0; i < 200; ++i) {
    ShotSample s = sample_shot(setup, 5, i);
    CHECK(s.electrons1 ==
          mean_electrons(setup.det1, static_cast<double>(s.photons1)));
  }
}

TEST_CASE("empirical electron mean matches the compound closed form") {
  // N_j around 10-25 photons, exact Poisson branch.
  DetectorModel det(5.0, 50.0, NoiseWidthSpec{NoiseWidthMode::Constant, 0.3}, 1e-4);
  HomodyneSetup setup(CoherentField(std::sqrt(30.0), 0.3),
                      CoherentField(std::sqrt(10.0), 0.0), det, det);
  const MixedPair mixed = mix_on_beam_splitter(setup.signal, setup.lo);

  const int shots = 1000000;
  double sum1 = 0.0, sumsq1 = 0.0, sum2 = 0.0, sumsq2 = 0.0;
  for (int i = 0; i < shots; ++i) {
    ShotSample s = sample_shot(setup, 2024, static_cast<std::uint64_t>(i));
    sum1 += s.electrons1;
    sumsq1 += s.electrons1 * s.electrons1;
    sum2 += s.electrons2;
    sumsq2 += s.electrons2 * s.electrons2;
  }
  const double m = shots;
  const auto check_detector = [&](double sum, double sumsq, double n_mean) {
    const auto predicted = exact_electron_moments(det, n_mean);
    const double mean = sum / m;
    const double var = (sumsq - m * mean * mean) / (m - 1.0);
    const double se_mean = std::sqrt(var / m);
    CHECK(std::abs(mean - predicted.mean) < 3.0 * se_mean);
    const double se_var = var * std::sqrt(2.0 / (m - 1.0));
    CHECK(std::abs(var - predicted.variance) < 4.0 * se_var);
  };
  check_detector(sum1, sumsq1, mixed.photons1());
  check_detector(sum2, sumsq2, mixed.photons2());
}

TEST_CASE("empirical variance shows the photon-noise excess over sigma^2") {
  const double sigma = 0.5;
  HomodyneSetup setup = desk_setup(sigma);
  const MixedPair mixed = mix_on_beam_splitter(setup.signal, setup.lo);
  const double predicted =
      exact_electron_moments(setup.det1, mixed.photons1()).variance;
  REQUIRE(predicted - sigma * sigma > 10.0 * sigma * sigma);

  const int shots = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < shots; ++i) {
    ShotSample s = sample_shot(setup, 31, static_cast<std::uint64_t>(i));
    sum += s.electrons1;
    sumsq += s.electrons1 * s.electrons1;
  }
  const double m = shots;
  const double mean = sum / m;
  const double var = (sumsq - m * mean * mean) / (m - 1.0);
  const double se_var = var * std::sqrt(2.0 / (m - 1.0));
  CHECK(std::abs(var - predicted) < 4.0 * se_var);
  CHECK(var > sigma * sigma + 0.5 * (predicted - sigma * sigma));
}

TEST_CASE("large-mean Gaussian branch reproduces the mean current") {
  DetectorModel det(1e16, 1e17, NoiseWidthSpec{NoiseWidthMode::Constant, 1e7},
                    1e-4);
  HomodyneSetup setup(CoherentField(std::sqrt(1.9e16), 0.05),
                      CoherentField(std::sqrt(1e14), 0.0), det, det);
  const MixedPair mixed = mix_on_beam_splitter(setup.signal, setup.lo);
  REQUIRE(mixed.photons1() > 1e6);  // Gaussian-approximation branch

  const int shots = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < shots; ++i) {
    ShotSample s = sample_shot(setup, 404, static_cast<std::uint64_t>(i));
    sum += s.current1;
    sumsq += s.current1 * s.current1;
  }
  const double m = shots;
  const double mean = sum / m;
  const double var = (sumsq - m * mean * mean) / (m - 1.0);
  CHECK(std::abs(mean - mean_current(det, mixed.photons1())) <
        3.0 * std::sqrt(var / m));
}

TEST_CASE("run_ensemble") {
  SUBCASE("bitwise-identical for identical seeds") {
    HomodyneSetup setup = desk_setup(10.0);
    EnsembleStats a = run_ensemble(setup, 2000, Protocol::Nonlinear, 9, 100);
    EnsembleStats b = run_ensemble(setup, 2000, Protocol::Nonlinear, 9, 100);
    CHECK(a.mean_current1 == b.mean_current1);
    CHECK(a.var_current2 == b.var_current2);
    CHECK(a.estimator_mean == b.estimator_mean);
    CHECK(a.estimator_std == b.estimator_std);
    CHECK(a.clamp_fraction == b.clamp_fraction);
  }
  SUBCASE("guards") {
    HomodyneSetup setup = desk_setup(10.0);
    CHECK_THROWS_AS(run_ensemble(setup, 1, Protocol::Nonlinear, 9),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_ensemble(setup, 10, Protocol::Nonlinear, 9, 3),
                    std::invalid_argument);
  }
  SUBCASE("two noiseless shots carry photon noise only") {
    HomodyneSetup setup = desk_setup(0.0);
    EnsembleStats stats = run_ensemble(setup, 2, Protocol::Nonlinear, 5, 1);
    CHECK(stats.shots == 2);
    CHECK(stats.var_current1 >= 0.0);
    CHECK(stats.clamp_fraction == 0.0);
  }
  SUBCASE("vacuum signal yields no estimates and no clamps") {
    DetectorModel det(1e3, 1e4, NoiseWidthSpec{NoiseWidthMode::Constant, 0.0},
                      1e-4);
    HomodyneSetup setup(CoherentField(0.0, 0.0), CoherentField(10.0, 0.0), det,
                        det);
    EnsembleStats stats = run_ensemble(setup, 100, Protocol::Nonlinear, 3, 10);
    CHECK(stats.estimator_std == 0.0);
    CHECK(stats.clamp_fraction == 0.0);
  }
}

TEST_CASE("per-shot estimator spread tracks the analytic precision") {
  const double sigma = 10.0;
  HomodyneSetup setup = desk_setup(sigma);
  EnsembleStats stats = run_ensemble(setup, 100000, Protocol::Nonlinear, 71, 1);
  const double predicted = analytic_precision(setup, sigma, 1);
  CHECK(std::abs(stats.estimator_std - predicted) / predicted < 0.1);
  CHECK(std::abs(stats.estimator_mean - 0.01) < 3.0 * predicted / std::sqrt(1e5));
}

TEST_CASE("different seeds are statistically consistent") {
  HomodyneSetup setup = desk_setup(10.0);
  std::vector<double> a, b;
  for (int i = 0; i < 20000; ++i) {
    a.push_back(sample_shot(setup, 1, static_cast<std::uint64_t>(i)).current1);
    b.push_back(sample_shot(setup, 2, static_cast<std::uint64_t>(i)).current1);
  }
  CHECK(ks_p_value(a, b) > 0.001);
}
