#pragma once

// Quasi-static plasmonics of a small metal sphere next to a dipole emitter.
//
// Unit system used throughout the library: energies in meV (hbar = 1),
// lengths in nm, dipole moments in e*nm. The Coulomb constant
// k_e = e^2 / (4 pi eps_0) = 1.43996e3 meV*nm absorbs eps_0 and hbar.

#include <complex>
#include <vector>

namespace qeplas {

inline constexpr double kCoulombMeVnm = 1.43996e3;

/// Drude permittivity eps(w) = eps_inf - w_p^2 / (w (w + i gamma_d)).
struct DrudeParams {
  double eps_inf = 1.0;
  double omega_p = 0.0;  // meV
  double gamma_d = 0.0;  // meV

  void validate() const;
};

enum class Orientation { Radial, Tangential };

struct GeometryParams {
  double r_m = 0.0;    // particle radius, nm
  double R = 0.0;      // center-to-emitter distance, nm
  double eps_b = 1.0;  // host permittivity
  Orientation orientation = Orientation::Radial;

  void validate() const;
};

/// Ladder-type three-level emitter |1> <-> |2> <-> |3>.
/// omega_32 is carried as a label only; the dynamics depend on the control
/// detuning Delta_c, never on omega_32 itself.
struct EmitterParams {
  double mu = 0.0;        // |1>-|2> transition dipole, e*nm
  double gamma_21 = 0.0;  // meV
  double gamma_32 = 0.0;  // meV
  double omega_21 = 0.0;  // meV
  double omega_32 = 0.0;  // meV, unused by the models

  void validate() const;
};

/// Mode-resolved constants of the n-th multipole plasmon.
struct PlasmonMode {
  int n = 1;
  double omega = 0.0;  // resonance frequency, meV
  double eta = 0.0;    // 1 / (d Re eps / d omega) at resonance, meV
  double kappa = 0.0;  // linewidth, meV
  double g = 0.0;      // emitter coupling, meV
};

/// All plasmonic inputs of the downstream models: modes n = 1..N plus the
/// dipole-mode to emitter dipole ratio xi = chi / mu.
struct PlasmonSpectrum {
  std::vector<PlasmonMode> modes;
  double xi = 0.0;

  const PlasmonMode& dipole_mode() const { return modes.front(); }
  int mode_count() const { return static_cast<int>(modes.size()); }
};

std::complex<double> permittivity(double omega, const DrudeParams& p);

/// Closed-form root of Re eps(w) = -((n+1)/n) eps_b including the gamma_d^2 term.
double mode_frequency(int n, const DrudeParams& p, double eps_b);

double mode_eta(int n, const DrudeParams& p, double eps_b);

double mode_kappa(int n, const DrudeParams& p, double eps_b);

/// Orientation factor s_n: (n+1)^2 radial, n(n+1)/2 tangential.
double orientation_factor(int n, Orientation orientation);

double coupling_g(int n, const GeometryParams& geom, const EmitterParams& em,
                  const DrudeParams& p);

double dipole_ratio_xi(const GeometryParams& geom, const EmitterParams& em,
                       const DrudeParams& p);

std::vector<PlasmonMode> derive_modes(int N, const GeometryParams& geom,
                                      const EmitterParams& em,
                                      const DrudeParams& p);

PlasmonSpectrum derive_spectrum(int N, const GeometryParams& geom,
                                const EmitterParams& em, const DrudeParams& p);

}  // namespace qeplas
