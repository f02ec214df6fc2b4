#include "qeplas/plasmonics.hpp"

#include <cmath>
#include <string>

#include "qeplas/errors.hpp"

namespace qeplas {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// omega_n^2 + gamma_d^2 = omega_p^2 / (eps_inf + ((n+1)/n) eps_b)
double resonance_norm2(int n, const DrudeParams& p, double eps_b) {
  require(n >= 1, "plasmon mode index must be >= 1");
  const double shape = (n + 1.0) / n;
  return p.omega_p * p.omega_p / (p.eps_inf + shape * eps_b);
}

}  // namespace

void DrudeParams::validate() const {
  require(omega_p > 0.0, "Drude omega_p must be positive");
  require(gamma_d >= 0.0, "Drude gamma_d must be non-negative");
  require(eps_inf >= 1.0, "Drude eps_inf must be >= 1");
}

void GeometryParams::validate() const {
  require(r_m > 0.0, "particle radius r_m must be positive");
  require(R > r_m, "emitter distance R must exceed the particle radius");
  require(eps_b >= 1.0, "host permittivity eps_b must be >= 1");
}

void EmitterParams::validate() const {
  require(mu > 0.0, "transition dipole mu must be positive");
  require(gamma_21 > 0.0, "gamma_21 must be positive");
  require(gamma_32 > 0.0, "gamma_32 must be positive");
}

std::complex<double> permittivity(double omega, const DrudeParams& p) {
  require(omega > 0.0, "permittivity needs omega > 0");
  const double wp2 = p.omega_p * p.omega_p;
  const double denom = omega * omega + p.gamma_d * p.gamma_d;
  return {p.eps_inf - wp2 / denom, wp2 * p.gamma_d / (omega * denom)};
}

double mode_frequency(int n, const DrudeParams& p, double eps_b) {
  const double arg = resonance_norm2(n, p, eps_b) - p.gamma_d * p.gamma_d;
  if (!(arg > 0.0)) {
    throw DomainError("no real plasmon resonance for mode n=" +
                      std::to_string(n));
  }
  return std::sqrt(arg);
}

double mode_eta(int n, const DrudeParams& p, double eps_b) {
  const double w = mode_frequency(n, p, eps_b);
  const double norm2 = w * w + p.gamma_d * p.gamma_d;
  return norm2 * norm2 / (2.0 * w * p.omega_p * p.omega_p);
}

double mode_kappa(int n, const DrudeParams& p, double eps_b) {
  const double w = mode_frequency(n, p, eps_b);
  return 2.0 * mode_eta(n, p, eps_b) * permittivity(w, p).imag();
}

double orientation_factor(int n, Orientation orientation) {
  return orientation == Orientation::Radial ? (n + 1.0) * (n + 1.0)
                                            : n * (n + 1.0) / 2.0;
}

double coupling_g(int n, const GeometryParams& geom, const EmitterParams& em,
                  const DrudeParams& p) {
  const double eta = mode_eta(n, p, geom.eps_b);
  const double s_n = orientation_factor(n, geom.orientation);
  const double radial = std::pow(geom.r_m, 2 * n + 1);
  const double root =
      std::sqrt((2.0 * n + 1.0) / n * s_n * eta * radial * kCoulombMeVnm);
  return em.mu / std::pow(geom.R, n + 2) * root;
}

double dipole_ratio_xi(const GeometryParams& geom, const EmitterParams& em,
                       const DrudeParams& p) {
  require(em.mu > 0.0, "xi needs mu > 0");
  const double eta1 = mode_eta(1, p, geom.eps_b);
  const double r3 = geom.r_m * geom.r_m * geom.r_m;
  return geom.eps_b * std::sqrt(3.0 * eta1 * r3 / kCoulombMeVnm) / em.mu;
}

std::vector<PlasmonMode> derive_modes(int N, const GeometryParams& geom,
                                      const EmitterParams& em,
                                      const DrudeParams& p) {
  require(N >= 1, "need at least one plasmon mode");
  std::vector<PlasmonMode> modes;
  modes.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    modes.push_back({n, mode_frequency(n, p, geom.eps_b),
                     mode_eta(n, p, geom.eps_b), mode_kappa(n, p, geom.eps_b),
                     coupling_g(n, geom, em, p)});
  }
  return modes;
}

PlasmonSpectrum derive_spectrum(int N, const GeometryParams& geom,
                                const EmitterParams& em, const DrudeParams& p) {
  p.validate();
  geom.validate();
  em.validate();
  return {derive_modes(N, geom, em, p), dipole_ratio_xi(geom, em, p)};
}

}  // namespace qeplas
