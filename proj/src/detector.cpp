#include "homodyne/detector.hpp"

#include <cmath>

namespace homodyne {

namespace {

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) {
    throw std::domain_error(std::string(what) + " must be >= 0, got " +
                            std::to_string(x));
  }
}

}  // namespace

OversaturatedError::OversaturatedError(double current, double i_max)
    : std::runtime_error("current " + std::to_string(current) +
                         " A is oversaturated (I_max = " +
                         std::to_string(i_max) + " A); phase unrecoverable"),
      current_(current),
      i_max_(i_max) {}

DetectorModel::DetectorModel(double k_max, double n_sat, NoiseWidthSpec sigma,
                             double tau_w)
    : k_max_(k_max), n_sat_(n_sat), sigma_(sigma), tau_w_(tau_w) {
  if (!(k_max > 0.0)) throw std::invalid_argument("DetectorModel: k_max must be > 0");
  if (!(n_sat > 0.0)) throw std::invalid_argument("DetectorModel: n_sat must be > 0");
  if (!(tau_w > 0.0)) throw std::invalid_argument("DetectorModel: tau_w must be > 0");
  if (!(sigma.value >= 0.0)) {
    throw std::invalid_argument("DetectorModel: sigma value must be >= 0");
  }
  i_max_ = kElectronCharge * k_max_ / tau_w_;
  // 1/(1 - e^{-x}) at x = 1/N_sat equals 1/x + 1/2 + x/12 - x^3/720 + ...,
  // so the excess over N_sat is ~1/2 and sits below one ulp of N_sat when
  // N_sat is large. Track the excess separately; the direct -expm1 route
  // would round it away entirely.
  const double x = 1.0 / n_sat_;
  if (x < 0.1) {
    const double x2 = x * x;
    n_sat_eff_delta_ =
        0.5 + x * (1.0 / 12.0 + x2 * (-1.0 / 720.0 + x2 / 30240.0));
  } else {
    n_sat_eff_delta_ = 1.0 / (-std::expm1(-x)) - n_sat_;
  }
  n_sat_eff_ = n_sat_ + n_sat_eff_delta_;
}

double mean_electrons(const DetectorModel& det, double n) {
  require_nonnegative(n, "photon number");
  return det.k_max() * (-std::expm1(-n / det.n_sat()));
}

double mean_current(const DetectorModel& det, double mean_photons) {
  require_nonnegative(mean_photons, "mean photon number");
  return det.i_max() * (-std::expm1(-mean_photons / det.n_sat_eff()));
}

double linear_current(const DetectorModel& det, double mean_photons) {
  require_nonnegative(mean_photons, "mean photon number");
  return kElectronCharge * (det.k_max() / det.n_sat()) * mean_photons / det.tau_w();
}

double invert_current(const DetectorModel& det, double current) {
  require_nonnegative(current, "current");
  if (current >= det.i_max() * (1.0 - DetectorModel::kOversaturationGuard)) {
    throw OversaturatedError(current, det.i_max());
  }
  return -det.n_sat_eff() * std::log1p(-current / det.i_max());
}

ElectronMoments exact_electron_moments(const DetectorModel& det,
                                       double mean_photons) {
  require_nonnegative(mean_photons, "mean photon number");
  if (det.sigma().mode != NoiseWidthMode::Constant) {
    throw std::invalid_argument(
        "exact_electron_moments: closed-form moments require a Constant noise width");
  }
  const double n = mean_photons;
  const double u = 1.0 / det.n_sat_eff();             // 1 - e^{-1/N_sat}
  const double a = n * (-std::expm1(-2.0 / det.n_sat()));
  // Var(mu(n)) = k_max^2 [e^{-a} - e^{-b}] with b - a = N (1 - e^{-1/N_sat})^2;
  // factored form avoids the cancellation between the two exponentials.
  const double var_photon =
      det.k_max() * det.k_max() * std::exp(-a) * (-std::expm1(-n * u * u));
  const double sigma = det.sigma().value;
  return ElectronMoments{det.k_max() * (-std::expm1(-n * u)),
                         sigma * sigma + var_photon};
}

ResponseRegime classify_regime(const DetectorModel& det, double mean_photons,
                               double theta_lin, double theta_over) {
  require_nonnegative(mean_photons, "mean photon number");
  const double ratio = mean_photons / det.n_sat();
  if (ratio < theta_lin) return ResponseRegime::Linear;
  if (ratio < theta_over) return ResponseRegime::Nonlinear;
  return ResponseRegime::Oversaturated;
}

const char* regime_name(ResponseRegime regime) {
  switch (regime) {
    case ResponseRegime::Linear: return "linear";
    case ResponseRegime::Nonlinear: return "nonlinear";
    case ResponseRegime::Oversaturated: return "oversaturated";
  }
  return "unknown";
}

}  // namespace homodyne
