#pragma once

// Test-only brute-force oracles, independent of the library's closed forms.

#include <cmath>

namespace test_oracles {

struct BruteMoments {
  double mean;
  double variance;
};

// Truncated sum over the Poisson photon-number distribution of the saturating
// response mu(n) = k_max (1 - e^{-n/n_sat}), with constant Gaussian electron
// noise sigma on top. Plain exp/log arithmetic on purpose.
inline BruteMoments poisson_averaged_moments(double k_max, double n_sat,
                                             double sigma,
                                             double mean_photons) {
  if (mean_photons == 0.0) return {0.0, sigma * sigma};
  const double cutoff =
      mean_photons + 40.0 * std::sqrt(mean_photons) + 60.0;
  const double log_n = std::log(mean_photons);
  double m1 = 0.0;
  double m2 = 0.0;
  for (double n = 0.0; n <= cutoff; n += 1.0) {
    const double log_p = n * log_n - mean_photons - std::lgamma(n + 1.0);
    const double p = std::exp(log_p);
    const double mu = k_max * (1.0 - std::exp(-n / n_sat));
    m1 += p * mu;
    m2 += p * mu * mu;
  }
  return {m1, sigma * sigma + (m2 - m1 * m1)};
}

}  // namespace test_oracles
