#include "homodyne/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace homodyne {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ShotRng::ShotRng(std::uint64_t seed, std::uint64_t index)
    : counter_(splitmix64(seed ^ 0x6a09e667f3bcc908ULL) ^
               splitmix64(index * 0x9e3779b97f4a7c15ULL + 0xbb67ae8584caa73bULL)) {}

std::uint64_t ShotRng::next_u64() { return splitmix64(counter_++); }

double ShotRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double ShotRng::next_gaussian() {
  const double u1 = next_double_open_low();
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t ShotRng::next_poisson(double mean) {
  if (!(mean >= 0.0)) throw std::domain_error("next_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;

  if (mean < 30.0) {
    // Inversion by multiplication of uniforms.
    const double limit = std::exp(-mean);
    double product = 1.0;
    std::uint64_t k = 0;
    for (;;) {
      product *= next_double_open_low();
      if (product <= limit) return k;
      ++k;
    }
  }

  if (mean < 1e6) {
    // Hormann's PTRD transformed rejection; exact for mean >= 10.
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
      double u = next_double() - 0.5;
      double v = next_double();
      const double us = 0.5 - std::abs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          kf * log_mean - mean - std::lgamma(kf + 1.0)) {
        return static_cast<std::uint64_t>(kf);
      }
    }
  }

  // Gaussian approximation; relative moment error O(1/sqrt(mean)) < 1e-3 here.
  const double n = std::round(mean + std::sqrt(mean) * next_gaussian());
  return n < 0.0 ? 0 : static_cast<std::uint64_t>(n);
}

}  // namespace homodyne
