#pragma once

#include <complex>

namespace homodyne {

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

/// Single-mode coherent amplitude: magnitude |a| >= 0 and phase in (-pi, pi].
/// Mean photon number is magnitude^2.
class CoherentField {
 public:
  CoherentField(double magnitude, double phase);

  double magnitude() const { return magnitude_; }
  double phase() const { return phase_; }
  double mean_photons() const { return magnitude_ * magnitude_; }
  std::complex<double> amplitude() const;

 private:
  double magnitude_;
  double phase_;
};

/// Output amplitudes of a lossless 50/50 beam splitter.
struct MixedPair {
  std::complex<double> out1;
  std::complex<double> out2;

  double photons1() const { return std::norm(out1); }
  double photons2() const { return std::norm(out2); }
};

// Mixing convention: out1 = (lo + i*signal)/sqrt(2), out2 = (signal + i*lo)/sqrt(2),
// with the LO stored as |b|e^{i phi}. Under this convention the photon-number
// difference is N2 - N1 = 2|a||b| sin(chi - phi).
MixedPair mix_on_beam_splitter(const CoherentField& signal, const CoherentField& lo);

/// N2 - N1 = 2|a||b| sin(chi - phi), evaluated directly.
double photon_number_difference(const CoherentField& signal, const CoherentField& lo);

/// Quadrature expectation |a| sin(chi - lo_phase) of the signal field.
double quadrature_expectation(const CoherentField& signal, double lo_phase);

}  // namespace homodyne
