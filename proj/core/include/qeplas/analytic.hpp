#pragma once

// Closed-form weak-drive tier. The state is truncated at two signal
// excitations, |psi> = |0,1> + C02|0,2> + C03|0,3> + C11|1,1>
//                     + C12|1,2> + C13|1,3> + C21|2,1>,
// with |m,n> = plasmon Fock |m> (x) emitter level |n>, and the amplitudes
// follow from the stationary Schroedinger equation of the effective
// Hamiltonian augmented by -i/2 times each decay rate.
//
// All frequencies returned here are absolute (lab-frame) meV.

#include <complex>
#include <utility>

#include "qeplas/models.hpp"
#include "qeplas/plasmonics.hpp"

namespace qeplas {

/// Detunings with the linewidths folded into the imaginary part.
struct ComplexDetunings {
  std::complex<double> Delta1_t;    // Delta_1 - i kappa_1 / 2
  std::complex<double> Ds_eff_t;    // Delta_s,eff - i gamma_21,eff / 2
  std::complex<double> Dsc_eff_t;   // Delta_s,eff + Delta_c,eff - i gamma_32 / 2
};

struct AmplitudeSet {
  std::complex<double> C02, C03, C11, C12, C13, C21;

  // Arguments in (-pi, pi] of C02, C11 (one-quantum) and C12, C21 (two-quantum).
  double phi1_1() const;
  double phi1_2() const;
  double phi2_1() const;
  double phi2_2() const;
  /// phi1_2 - phi1_1 wrapped to (-pi, pi].
  double one_quantum_phase_difference() const;
  /// phi2_2 - phi2_1 wrapped to (-pi, pi].
  double two_quantum_phase_difference() const;
};

/// Wraps an angle to (-pi, pi].
double wrap_phase(double angle);

/// Constructive when |phase difference| < pi/2.
inline bool is_constructive(double phase_difference) {
  return phase_difference > -1.5707963267948966 && phase_difference < 1.5707963267948966;
}

ComplexDetunings complex_detunings(const EffectiveParams& effp, const PlasmonMode& mode1,
                                   const EmitterParams& em, const DriveParams& drive);

AmplitudeSet amplitudes(const EffectiveParams& effp, const PlasmonSpectrum& spectrum,
                        const EmitterParams& em, const DriveParams& drive);

/// mu^2 (|C02|^2 + xi^2 |C11|^2 + 2 xi Re[C02^* C11]).
double intensity_from_amplitudes(const AmplitudeSet& c, double mu, double xi);

/// Two-quantum over squared one-quantum weight of the scattered polarization.
double g2_from_amplitudes(const AmplitudeSet& c, double xi);

/// Closed-form intensity (no intermediate amplitudes).
double intensity_closed(const EffectiveParams& effp, const PlasmonSpectrum& spectrum,
                        const EmitterParams& em, const DriveParams& drive);

/// Closed-form g2(0); drive-strength independent. Throws UndefinedCorrelation
/// when the one-quantum response vanishes.
double g2_closed(const EffectiveParams& effp, const PlasmonSpectrum& spectrum,
                 const EmitterParams& em, const DriveParams& drive);

struct DressedEnergies {
  double plus = 0.0;
  double minus = 0.0;
};

/// Control-field dressed levels of |2>:
/// omega_21,eff + (Delta_c,eff +/- sqrt(Delta_c,eff^2 + 4 Omega_c^2)) / 2.
DressedEnergies dressed_energies(const EffectiveParams& effp, const DriveParams& drive);

/// Lower polariton of a level at `level` coupled with strength g to the dipole mode.
double lower_polariton(double level, const PlasmonMode& mode1);

/// Photon-blockade frequency without control field.
double blockade_frequency(const EffectiveParams& effp, const PlasmonMode& mode1);

/// Photon-blockade frequencies built on the two dressed levels.
DressedEnergies blockade_frequencies_dressed(const EffectiveParams& effp,
                                             const PlasmonMode& mode1,
                                             const DriveParams& drive);

}  // namespace qeplas
