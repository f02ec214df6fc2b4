#pragma once

#include <random>

#include "qeplas/models.hpp"
#include "qeplas/plasmonics.hpp"
#include "qeplas/quantum.hpp"

namespace fixtures {

inline qeplas::DrudeParams silver() { return {4.6, 9000.0, 100.0}; }

inline qeplas::GeometryParams geometry(qeplas::Orientation o = qeplas::Orientation::Radial) {
  return {7.0, 12.0, 1.0, o};
}

inline qeplas::EmitterParams emitter(double omega_21) { return {0.5, 0.05, 0.05, omega_21, 0.0}; }

struct Setup {
  qeplas::PlasmonSpectrum spectrum;
  qeplas::EmitterParams em;
};

// Reference parameters with omega_21 = omega_1 - 150 meV and N modes.
inline Setup reference(int N) {
  const double omega_1 = qeplas::mode_frequency(1, silver(), 1.0);
  Setup s;
  s.em = emitter(omega_1 - 150.0);
  s.spectrum = qeplas::derive_spectrum(N, geometry(), s.em, silver());
  return s;
}

inline qeplas::Matrix random_hermitian(Eigen::Index d, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  qeplas::Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = {nd(rng), nd(rng)};
  return (m + m.adjoint()) / 2.0;
}

// Random full-rank density matrix A A^dagger / tr.
inline qeplas::Matrix random_density(Eigen::Index d, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  qeplas::Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = {nd(rng), nd(rng)};
  qeplas::Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace fixtures
