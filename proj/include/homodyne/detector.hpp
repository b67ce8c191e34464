#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace homodyne {

/// Elementary charge in coulombs (exact SI value).
inline constexpr double kElectronCharge = 1.602176634e-19;

enum class NoiseWidthMode { Constant, ShotScaled };

/// Width of the Gaussian electron-count distribution around mu(n).
/// Constant: sigma = value.  ShotScaled: sigma(n) = value * sqrt(mu(n)).
struct NoiseWidthSpec {
  NoiseWidthMode mode = NoiseWidthMode::Constant;
  double value = 0.0;

  double width(double mu_n) const {
    return mode == NoiseWidthMode::Constant ? value
                                            : value * std::sqrt(mu_n);
  }

  /// Default electronic-noise floor used when no sigma is configured.
  static NoiseWidthSpec default_for(double k_max) {
    return {NoiseWidthMode::Constant, std::sqrt(0.01 * k_max)};
  }
};

enum class ResponseRegime { Linear, Nonlinear, Oversaturated };

/// Thrown when a current is within the oversaturation guard of I_max; the
/// saturated detector carries no photon-number information there.
class OversaturatedError : public std::runtime_error {
 public:
  OversaturatedError(double current, double i_max);
  double current() const { return current_; }
  double i_max() const { return i_max_; }

 private:
  double current_;
  double i_max_;
};

/// Saturating photodetector: mean electron count mu(n) = k_max(1 - e^{-n/N_sat}),
/// Gaussian conditional spread, response window tau_w.
class DetectorModel {
 public:
  // Relative headroom below I_max required for current inversion.
  static constexpr double kOversaturationGuard = 1e-12;

  DetectorModel(double k_max, double n_sat, NoiseWidthSpec sigma, double tau_w);

  double k_max() const { return k_max_; }
  double n_sat() const { return n_sat_; }
  const NoiseWidthSpec& sigma() const { return sigma_; }
  double tau_w() const { return tau_w_; }

  /// I_max = e * k_max / tau_w.
  double i_max() const { return i_max_; }
  /// Effective saturation number 1/(1 - e^{-1/N_sat}), computed via expm1.
  double n_sat_eff() const { return n_sat_eff_; }
  /// n_sat_eff - n_sat, held separately because the ~0.5 correction is below
  /// one ulp of n_sat_eff at large N_sat.
  double n_sat_eff_delta() const { return n_sat_eff_delta_; }

  bool same_response_as(const DetectorModel& other) const {
    return k_max_ == other.k_max_ && n_sat_ == other.n_sat_ &&
           tau_w_ == other.tau_w_;
  }

 private:
  double k_max_;
  double n_sat_;
  NoiseWidthSpec sigma_;
  double tau_w_;
  double i_max_;
  double n_sat_eff_;
  double n_sat_eff_delta_;
};

/// Mean photoelectron count for n incident photons: k_max(1 - e^{-n/N_sat}).
double mean_electrons(const DetectorModel& det, double n);

/// Poisson-averaged mean current: I_max(1 - e^{-N/N_sat_eff}).
double mean_current(const DetectorModel& det, double mean_photons);

/// Linear-response current e*(k_max/N_sat)*N/tau_w (no saturation).
double linear_current(const DetectorModel& det, double mean_photons);

/// Inverse of mean_current: N = -N_sat_eff * log1p(-I/I_max).
/// Throws OversaturatedError at I >= I_max*(1 - guard).
double invert_current(const DetectorModel& det, double current);

struct ElectronMoments {
  double mean;
  double variance;
};

/// Exact mean and variance of the compound Poisson-Gaussian electron count.
/// Requires a Constant noise width.
ElectronMoments exact_electron_moments(const DetectorModel& det, double mean_photons);

ResponseRegime classify_regime(const DetectorModel& det, double mean_photons,
                               double theta_lin = 0.05, double theta_over = 10.0);

const char* regime_name(ResponseRegime regime);

}  // namespace homodyne
