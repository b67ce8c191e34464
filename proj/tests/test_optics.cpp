#include <doctest.h>

#include <cmath>
#include <random>

#include "homodyne/optics.hpp"

using namespace homodyne;

TEST_CASE("vacuum signal splits the LO evenly") {
  CoherentField vacuum(0.0, 0.0);
  CoherentField lo(3.0, 0.7);
  MixedPair mixed = mix_on_beam_splitter(vacuum, lo);
  CHECK(mixed.photons1() == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(mixed.photons2() == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("photon-number difference at quadrature, large amplitudes") {
  // |a|^2 = 1e16, |b|^2 = 1e15, chi - phi = pi/2
  CoherentField signal(1e8, M_PI / 2.0);
  CoherentField lo(std::sqrt(1e15), 0.0);
  MixedPair mixed = mix_on_beam_splitter(signal, lo);
  const double expected = 2.0 * std::sqrt(1e16 * 1e15);
  CHECK(mixed.photons2() - mixed.photons1() ==
        doctest::Approx(expected).epsilon(1e-9));
  CHECK(photon_number_difference(signal, lo) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("zero relative phase gives zero difference") {
  CoherentField signal(2.0, 0.4);
  CoherentField lo(5.0, 0.4);
  MixedPair mixed = mix_on_beam_splitter(signal, lo);
  CHECK(mixed.photons2() - mixed.photons1() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(photon_number_difference(signal, lo) == 0.0);
}

TEST_CASE("photon_number_difference examples") {
  CHECK(photon_number_difference(CoherentField(1.0, M_PI / 6.0),
                                 CoherentField(1.0, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(photon_number_difference(CoherentField(1e8, 0.01),
                                 CoherentField(std::sqrt(1e15), 0.0)) ==
        doctest::Approx(2.0 * std::sqrt(1e31) * std::sin(0.01)).epsilon(1e-12));
  CHECK(photon_number_difference(CoherentField(2.0, M_PI / 2.0),
                                 CoherentField(3.0, 0.0)) ==
        doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("quadrature expectation examples") {
  CHECK(quadrature_expectation(CoherentField(1.0, 0.3), 0.3) == 0.0);
  CHECK(quadrature_expectation(CoherentField(1e8, 0.01), 0.0) ==
        doctest::Approx(1e8 * std::sin(0.01)).epsilon(1e-12));
  CHECK(quadrature_expectation(CoherentField(5.0, M_PI / 2.0), 0.0) ==
        doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("energy conservation and mixing consistency over random inputs") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> mag(0.0, 1e8);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    CoherentField signal(mag(gen), ang(gen));
    CoherentField lo(mag(gen), ang(gen));
    MixedPair mixed = mix_on_beam_splitter(signal, lo);
    const double total = signal.mean_photons() + lo.mean_photons();
    CHECK(mixed.photons1() + mixed.photons2() ==
          doctest::Approx(total).epsilon(1e-12));
    CHECK(mixed.photons2() - mixed.photons1() ==
          doctest::Approx(photon_number_difference(signal, lo))
              .epsilon(1e-10)
              .scale(total));
  }
}

TEST_CASE("outputs are 2pi-periodic in chi") {
  CoherentField signal(1.5, 0.3);
  CoherentField shifted(1.5, 0.3 + 2.0 * M_PI);
  CoherentField lo(4.0, -0.2);
  CHECK(photon_number_difference(signal, lo) ==
        doctest::Approx(photon_number_difference(shifted, lo)).epsilon(1e-12));
  MixedPair a = mix_on_beam_splitter(signal, lo);
  MixedPair b = mix_on_beam_splitter(shifted, lo);
  CHECK(a.photons1() == doctest::Approx(b.photons1()).epsilon(1e-12));
  CHECK(a.photons2() == doctest::Approx(b.photons2()).epsilon(1e-12));
}

TEST_CASE("difference is antisymmetric in chi - phi") {
  CoherentField lo(2.0, 0.0);
  for (double d : {0.1, 0.7, 1.3}) {
    CHECK(photon_number_difference(CoherentField(3.0, d), lo) ==
          doctest::Approx(-photon_number_difference(CoherentField(3.0, -d), lo))
              .epsilon(1e-12));
  }
}

TEST_CASE("field invariants") {
  CHECK_THROWS_AS(CoherentField(-1.0, 0.0), std::invalid_argument);
  CoherentField f(2.0, 7.0);
  CHECK(f.phase() > -M_PI);
  CHECK(f.phase() <= M_PI);
  CHECK(f.mean_photons() == 4.0);
}
