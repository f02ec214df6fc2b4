#pragma once

// Exact multimode and effective single-mode emitter-nanoparticle models,
// assembled as Hamiltonian + Lindblad jump lists in a frame rotating at the
// signal frequency, plus the polarization observables I and g2(0).
//
// Hilbert-space layout: factor 0 is the three-level emitter (levels 1,2,3 at
// indices 0,1,2), factors 1..N are the plasmon modes n = 1..N.

#include <string>
#include <vector>

#include "qeplas/plasmonics.hpp"
#include "qeplas/quantum.hpp"

namespace qeplas {

struct DriveParams {
  double omega_s = 0.0;     // signal frequency, meV
  double Omega_s_mu = 0.0;  // signal Rabi frequency on the emitter, meV
  double Omega_c = 0.0;     // control Rabi frequency, meV
  double Delta_c = 0.0;     // control detuning omega_32 - omega_c, meV
};

/// Denominator of the adiabatic-elimination weights alpha_n:
/// AsPrinted uses (kappa_n - gamma_21)^2 / 4, SumOfRates (kappa_n + gamma_21)^2 / 4.
enum class AlphaDenominator { AsPrinted, SumOfRates };

inline constexpr double kAlphaValidityLimit = 0.1;

struct EffectiveParams {
  std::vector<double> alpha;  // alpha_n for n = 2..N
  double Delta_s_eff = 0.0;
  double Delta_c_eff = 0.0;
  double gamma_21_eff = 0.0;
  double omega_21_eff = 0.0;

  /// True when every alpha_n is below kAlphaValidityLimit.
  bool valid() const;
};

enum class ModelKind { ExactMultimode, EffectiveSingleMode };

struct ModelLabel {
  ModelKind kind = ModelKind::EffectiveSingleMode;
  int N = 1;

  std::string to_string() const;
};

struct ModelSystem {
  HilbertDims dims;
  Operator hamiltonian;
  std::vector<Jump> jumps;
  Operator polarization;  // chi a_1 + mu sigma_12
  ModelLabel label;
  std::vector<std::string> warnings;
};

struct BuildOptions {
  int cutoff = 3;
  // Largest Hilbert-space dimension the builders accept.
  Eigen::Index max_dimension = 729;
};

/// Signal detuning omega_21 - omega_s.
inline double signal_detuning(const EmitterParams& em, const DriveParams& drive) {
  return em.omega_21 - drive.omega_s;
}

ModelSystem build_exact(const PlasmonSpectrum& spectrum, const EmitterParams& em,
                        const DriveParams& drive, int N,
                        const BuildOptions& options = {});

EffectiveParams effective_params(const PlasmonSpectrum& spectrum,
                                 const EmitterParams& em, const DriveParams& drive,
                                 int N,
                                 AlphaDenominator denominator = AlphaDenominator::AsPrinted);

ModelSystem build_effective(const EffectiveParams& effp,
                            const PlasmonSpectrum& spectrum,
                            const EmitterParams& em, const DriveParams& drive,
                            const BuildOptions& options = {});

/// I = <P^dagger P>, clamped at 0 for round-off negatives.
double intensity(const ModelSystem& model, const DensityMatrix& rho);

/// g2(0) = <P^dagger^2 P^2> / <P^dagger P>^2. Throws UndefinedCorrelation
/// when the intensity is below 1e-30.
double g2_zero(const ModelSystem& model, const DensityMatrix& rho);

struct Observables {
  double intensity = 0.0;
  double g2 = 0.0;
};

/// Steady state of the model followed by both observables.
Observables steady_observables(const ModelSystem& model,
                               const SteadyStateOptions& options = {});

}  // namespace qeplas
