#include "homodyne/estimation.hpp"

#include <algorithm>
#include <cmath>

namespace homodyne {

namespace {

// Regime seen by an estimator that only has a current: invert when possible,
// oversaturated otherwise.
ResponseRegime regime_from_current(const DetectorModel& det, double current) {
  if (current < 0.0) return ResponseRegime::Linear;
  if (current >= det.i_max() * (1.0 - DetectorModel::kOversaturationGuard)) {
    return ResponseRegime::Oversaturated;
  }
  return classify_regime(det, invert_current(det, current));
}

double clamped_asin(double arg, bool* clamped) {
  if (arg > 1.0) {
    *clamped = true;
    arg = 1.0;
  } else if (arg < -1.0) {
    *clamped = true;
    arg = -1.0;
  }
  return std::asin(arg);
}

void require_nondegenerate(const HomodyneSetup& setup) {
  if (setup.signal.magnitude() == 0.0) {
    throw std::domain_error("phase estimation requires a nonvacuum signal (|alpha| > 0)");
  }
}

double cos_or_throw(const HomodyneSetup& setup) {
  const double c = std::cos(setup.signal.phase() - setup.lo.phase());
  if (std::abs(c) < 1e-12) {
    throw std::domain_error(
        "precision diverges at chi - phi = +/- pi/2 (cos(chi - phi) = 0)");
  }
  return c;
}

}  // namespace

HomodyneSetup::HomodyneSetup(CoherentField signal_, CoherentField lo_,
                             DetectorModel det1_, DetectorModel det2_)
    : signal(signal_), lo(lo_), det1(det1_), det2(det2_) {
  if (!(lo.magnitude() > 0.0)) {
    throw std::invalid_argument("HomodyneSetup: homodyne measurement requires a nonvacuum LO");
  }
}

MeasurementRecord forward_currents(const HomodyneSetup& setup) {
  const MixedPair mixed = mix_on_beam_splitter(setup.signal, setup.lo);
  return MeasurementRecord{mean_current(setup.det1, mixed.photons1()),
                           mean_current(setup.det2, mixed.photons2()), 1};
}

EstimateReport estimate_phase_linear(const MeasurementRecord& record,
                                     const HomodyneSetup& setup) {
  require_nondegenerate(setup);
  const DetectorModel& det = setup.det1;
  const double r = kElectronCharge * (det.k_max() / det.n_sat()) / det.tau_w();
  const double delta_i =
      (record.current2 - record.current1) / (2.0 * setup.lo.magnitude() * r);

  EstimateReport report;
  report.protocol = Protocol::Linear;
  report.phase_estimate =
      setup.lo.phase() +
      clamped_asin(delta_i / setup.signal.magnitude(), &report.clamped);
  report.regime1 = regime_from_current(setup.det1, record.current1);
  report.regime2 = regime_from_current(setup.det2, record.current2);
  return report;
}

EstimateReport estimate_phase_nonlinear(const MeasurementRecord& record,
                                        const HomodyneSetup& setup) {
  require_nondegenerate(setup);
  const double n1 = invert_current(setup.det1, record.current1);
  const double n2 = invert_current(setup.det2, record.current2);
  const double arg =
      (n2 - n1) / (2.0 * setup.signal.magnitude() * setup.lo.magnitude());

  EstimateReport report;
  report.protocol = Protocol::Nonlinear;
  report.phase_estimate = setup.lo.phase() + clamped_asin(arg, &report.clamped);
  report.regime1 = classify_regime(setup.det1, n1);
  report.regime2 = classify_regime(setup.det2, n2);
  return report;
}

double error_ratio(const HomodyneSetup& setup, Protocol protocol) {
  const double chi = setup.signal.phase();
  if (chi == 0.0) {
    throw std::domain_error("error_ratio is undefined at chi = 0");
  }
  const MeasurementRecord record = forward_currents(setup);
  const EstimateReport report = protocol == Protocol::Linear
                                    ? estimate_phase_linear(record, setup)
                                    : estimate_phase_nonlinear(record, setup);
  return std::abs(report.phase_estimate - chi) / chi;
}

double analytic_precision(const HomodyneSetup& setup, double sigma,
                          std::int64_t shots) {
  if (!setup.det1.same_response_as(setup.det2)) {
    throw std::invalid_argument(
        "analytic_precision assumes two identical detectors; use general_precision");
  }
  if (!(sigma > 0.0)) throw std::domain_error("analytic_precision: sigma must be > 0");
  if (shots < 1) throw std::domain_error("analytic_precision: shots must be >= 1");
  require_nondegenerate(setup);
  const double cosine = cos_or_throw(setup);

  const MeasurementRecord record = forward_currents(setup);
  const DetectorModel& det = setup.det1;
  const double guard = det.i_max() * (1.0 - DetectorModel::kOversaturationGuard);
  if (record.current1 >= guard) throw OversaturatedError(record.current1, det.i_max());
  if (record.current2 >= guard) throw OversaturatedError(record.current2, det.i_max());

  const double delta1 = 1.0 / (det.i_max() - record.current1);
  const double delta2 = 1.0 / (det.i_max() - record.current2);
  const double prefactor =
      kElectronCharge * sigma * det.n_sat_eff() /
      (2.0 * det.tau_w() * setup.signal.magnitude() * setup.lo.magnitude() *
       std::abs(cosine));
  return prefactor * std::hypot(delta1, delta2) /
         std::sqrt(static_cast<double>(shots));
}

double general_precision(const HomodyneSetup& setup, double var_current1,
                         double var_current2) {
  if (!(var_current1 >= 0.0) || !(var_current2 >= 0.0)) {
    throw std::domain_error("general_precision: variances must be >= 0");
  }
  require_nondegenerate(setup);
  const double cosine = cos_or_throw(setup);

  const MeasurementRecord record = forward_currents(setup);
  const auto slope = [](const DetectorModel& det, double current) {
    if (current >= det.i_max() * (1.0 - DetectorModel::kOversaturationGuard)) {
      throw OversaturatedError(current, det.i_max());
    }
    return det.n_sat_eff() / (det.i_max() - current);  // dF/dI
  };
  const double s1 = slope(setup.det1, record.current1);
  const double s2 = slope(setup.det2, record.current2);
  const double delta_m = std::sqrt(s1 * s1 * var_current1 + s2 * s2 * var_current2);
  return delta_m / (2.0 * setup.signal.magnitude() * setup.lo.magnitude() *
                    std::abs(cosine));
}

}  // namespace homodyne
