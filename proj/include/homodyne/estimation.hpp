#pragma once

#include <cstdint>
#include <optional>

#include "homodyne/detector.hpp"
#include "homodyne/optics.hpp"

namespace homodyne {

enum class Protocol { Linear, Nonlinear };

/// Full forward model: signal + LO mixed on a 50/50 splitter, outputs read by
/// two saturating detectors.
struct HomodyneSetup {
  CoherentField signal;
  CoherentField lo;
  DetectorModel det1;
  DetectorModel det2;

  HomodyneSetup(CoherentField signal_, CoherentField lo_, DetectorModel det1_,
                DetectorModel det2_);
};

/// Ensemble-mean currents at the two detectors, averaged over `shots` repeats.
struct MeasurementRecord {
  double current1 = 0.0;  // amperes, detector D1
  double current2 = 0.0;  // amperes, detector D2
  std::int64_t shots = 1;
};

struct EstimateReport {
  double phase_estimate = 0.0;               // radians, in [phi - pi/2, phi + pi/2]
  std::optional<double> precision;           // radians, when computed
  ResponseRegime regime1 = ResponseRegime::Linear;
  ResponseRegime regime2 = ResponseRegime::Linear;
  Protocol protocol = Protocol::Linear;
  bool clamped = false;                      // arcsin argument was clamped to +/-1
};

/// Noiseless ensemble-mean currents for the setup (saturating response).
MeasurementRecord forward_currents(const HomodyneSetup& setup);

/// Linear-response protocol: chi = phi + asin((I2 - I1) / (2|b| r |a|)),
/// with r = e*(k_max/N_sat)/tau_w of det1.
EstimateReport estimate_phase_linear(const MeasurementRecord& record,
                                     const HomodyneSetup& setup);

/// Saturation-aware protocol: chi = phi + asin((F(I2) - F(I1)) / (2|a||b|)),
/// F the mean-current inverse. Propagates OversaturatedError.
EstimateReport estimate_phase_nonlinear(const MeasurementRecord& record,
                                        const HomodyneSetup& setup);

/// |chi_est - chi| / chi for forward-model currents under the given protocol.
double error_ratio(const HomodyneSetup& setup, Protocol protocol);

/// Analytic phase precision for identical detectors with constant electron
/// noise sigma, averaged over `shots` repeats:
///   dchi = e sigma N_sat_eff / (2 tau_w |a b cos(chi-phi)|)
///          * sqrt(D1^2 + D2^2) / sqrt(shots),  D_j = 1/(I_max - I_j).
double analytic_precision(const HomodyneSetup& setup, double sigma,
                          std::int64_t shots);

/// Error propagation with per-detector current variances; allows nonidentical
/// detectors. Reduces to analytic_precision when var_j = (e sigma / tau_w)^2.
double general_precision(const HomodyneSetup& setup, double var_current1,
                         double var_current2);

}  // namespace homodyne
