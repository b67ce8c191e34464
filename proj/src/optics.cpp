#include "homodyne/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace homodyne {

double wrap_phase(double phase) {
  double r = std::remainder(phase, 2.0 * M_PI);
  if (r <= -M_PI) r += 2.0 * M_PI;
  return r;
}

CoherentField::CoherentField(double magnitude, double phase)
    : magnitude_(magnitude), phase_(wrap_phase(phase)) {
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
    throw std::invalid_argument("CoherentField: magnitude must be finite and >= 0");
  }
  if (!std::isfinite(phase)) {
    throw std::invalid_argument("CoherentField: phase must be finite");
  }
}

std::complex<double> CoherentField::amplitude() const {
  return std::polar(magnitude_, phase_);
}

MixedPair mix_on_beam_splitter(const CoherentField& signal, const CoherentField& lo) {
  const std::complex<double> a = signal.amplitude();
  const std::complex<double> b = lo.amplitude();
  const std::complex<double> i(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return MixedPair{(b + i * a) * inv_sqrt2, (a + i * b) * inv_sqrt2};
}

double photon_number_difference(const CoherentField& signal, const CoherentField& lo) {
  return 2.0 * signal.magnitude() * lo.magnitude() *
         std::sin(signal.phase() - lo.phase());
}

double quadrature_expectation(const CoherentField& signal, double lo_phase) {
  return signal.magnitude() * std::sin(signal.phase() - lo_phase);
}

}  // namespace homodyne
