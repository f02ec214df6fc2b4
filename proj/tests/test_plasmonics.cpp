#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qeplas/errors.hpp"
#include "qeplas/plasmonics.hpp"

using namespace qeplas;

namespace {

// Independent Drude evaluation and resonance search by bisection.
double re_eps(double w, const DrudeParams& p) {
  return p.eps_inf - p.omega_p * p.omega_p / (w * w + p.gamma_d * p.gamma_d);
}

double bisect_resonance(int n, const DrudeParams& p, double eps_b) {
  const double target = -(n + 1.0) / n * eps_b;
  double lo = 100.0, hi = 20000.0;  // re_eps increasing in w
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (re_eps(mid, p) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double central_diff(double w, const DrudeParams& p) {
  const double h = 1e-3;
  return (re_eps(w + h, p) - re_eps(w - h, p)) / (2 * h);
}

}  // namespace

TEST_CASE("permittivity matches the Drude form and rejects non-positive frequency") {
  const auto p = fixtures::silver();
  const auto e = permittivity(3000.0, p);
  CHECK(e.real() == doctest::Approx(re_eps(3000.0, p)).epsilon(1e-14));
  const double im = p.omega_p * p.omega_p * p.gamma_d / (3000.0 * (3000.0 * 3000.0 + 1e4));
  CHECK(e.imag() == doctest::Approx(im).epsilon(1e-14));
  CHECK_THROWS_AS(permittivity(0.0, p), DomainError);
  CHECK_THROWS_AS(permittivity(-1.0, p), DomainError);
}

TEST_CASE("mode frequencies agree with a bisection root finder") {
  const auto p = fixtures::silver();
  for (int n = 1; n <= 12; ++n) {
    CAPTURE(n);
    CHECK(mode_frequency(n, p, 1.0) == doctest::Approx(bisect_resonance(n, p, 1.0)).epsilon(1e-12));
    CHECK(mode_frequency(n, p, 2.25) == doctest::Approx(bisect_resonance(n, p, 2.25)).epsilon(1e-12));
  }
  CHECK(re_eps(mode_frequency(1, p, 1.0), p) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("eta is the inverse slope of Re eps at resonance") {
  const auto p = fixtures::silver();
  for (int n = 1; n <= 6; ++n) {
    const double w = mode_frequency(n, p, 1.0);
    CHECK(mode_eta(n, p, 1.0) == doctest::Approx(1.0 / central_diff(w, p)).epsilon(1e-8));
  }
}

TEST_CASE("kappa equals 2 eta Im eps at resonance") {
  const auto p = fixtures::silver();
  for (int n = 1; n <= 6; ++n) {
    const double w = mode_frequency(n, p, 1.0);
    const double expected = 2.0 * mode_eta(n, p, 1.0) * permittivity(w, p).imag();
    CHECK(mode_kappa(n, p, 1.0) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("coupling and dipole ratio by hand") {
  const auto p = fixtures::silver();
  const auto geom = fixtures::geometry();
  const auto em = fixtures::emitter(3350.0);
  const double eta1 = mode_eta(1, p, 1.0);
  // n = 1, radial: (2n+1)/n = 3, s_1 = 4.
  const double g1 = em.mu / std::pow(12.0, 3) * std::sqrt(3.0 * 4.0 * eta1 * std::pow(7.0, 3) * kCoulombMeVnm);
  CHECK(coupling_g(1, geom, em, p) == doctest::Approx(g1).epsilon(1e-13));
  // n = 2, tangential: (2n+1)/n = 2.5, s_2 = 3.
  const double eta2 = mode_eta(2, p, 1.0);
  const double g2 = em.mu / std::pow(12.0, 4) * std::sqrt(2.5 * 3.0 * eta2 * std::pow(7.0, 5) * kCoulombMeVnm);
  CHECK(coupling_g(2, fixtures::geometry(Orientation::Tangential), em, p) ==
        doctest::Approx(g2).epsilon(1e-13));
  const double xi = std::sqrt(3.0 * eta1 * std::pow(7.0, 3) / kCoulombMeVnm) / em.mu;
  CHECK(dipole_ratio_xi(geom, em, p) == doctest::Approx(xi).epsilon(1e-13));
}

TEST_CASE("reference parameter constants") {
  const auto s = fixtures::reference(2);
  const auto& m1 = s.spectrum.modes[0];
  CHECK(m1.omega == doctest::Approx(3501.8).epsilon(0.5 / 3501.8));
  CHECK(s.spectrum.modes[1].omega == doctest::Approx(3642.6).epsilon(0.5 / 3642.6));
  CHECK(m1.kappa == doctest::Approx(100.1).epsilon(0.5 / 100.1));
  CHECK(m1.eta == doctest::Approx(265.5).epsilon(0.5 / 265.5));
  CHECK(m1.g == doctest::Approx(11.5).epsilon(0.1 / 11.5));
  CHECK(s.spectrum.xi == doctest::Approx(27.5).epsilon(0.2 / 27.5));
  CHECK(s.spectrum.modes[1].eta == doctest::Approx(298.9).epsilon(0.5 / 298.9));
}

TEST_CASE("couplings fall off with multipole order") {
  const auto s = fixtures::reference(10);
  REQUIRE(s.spectrum.mode_count() == 10);
  for (int k = 1; k < 10; ++k) {
    CHECK(s.spectrum.modes[k].omega > s.spectrum.modes[k - 1].omega);
    CHECK(s.spectrum.modes[k].g < s.spectrum.modes[k - 1].g);
    CHECK(s.spectrum.modes[k].n == k + 1);
  }
}

TEST_CASE("invalid parameters are rejected") {
  auto p = fixtures::silver();
  p.omega_p = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  auto geom = fixtures::geometry();
  geom.R = 5.0;  // inside the particle
  CHECK_THROWS_AS(derive_spectrum(1, geom, fixtures::emitter(3350.0), fixtures::silver()), DomainError);
  auto em = fixtures::emitter(3350.0);
  em.mu = 0.0;
  CHECK_THROWS_AS(dipole_ratio_xi(fixtures::geometry(), em, fixtures::silver()), DomainError);
  CHECK_THROWS_AS(derive_modes(0, fixtures::geometry(), fixtures::emitter(3350.0), fixtures::silver()),
                  DomainError);
}
