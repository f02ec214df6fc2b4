#include "qeplas/models.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>

#include "qeplas/errors.hpp"

namespace qeplas {

namespace {

// Common structure of both Hamiltonians; the exact and effective builders
// differ only in the emitter detunings, the |1>-|2> decay rate and the set
// of modes kept.
struct EmitterFrame {
  double Delta_s = 0.0;   // coefficient of sigma_22
  double Delta_sc = 0.0;  // coefficient of sigma_33
  double gamma_21 = 0.0;
};

ModelSystem assemble(const EmitterFrame& frame, std::span<const PlasmonMode> modes,
                     double xi, const EmitterParams& em, const DriveParams& drive,
                     const BuildOptions& options, ModelLabel label) {
  if (options.cutoff < 2) throw DomainError("Fock cutoff must be >= 2");
  if (modes.empty()) throw DomainError("model needs at least the dipole mode");

  std::vector<int> factors{3};
  Eigen::Index total = 3;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    factors.push_back(options.cutoff);
    total *= options.cutoff;
    if (total > options.max_dimension) {
      std::ostringstream os;
      os << label.to_string() << " with cutoff " << options.cutoff
         << " exceeds the dimension cap " << options.max_dimension
         << "; use the effective single-mode model";
      throw DomainError(os.str());
    }
  }
  const HilbertDims dims(std::move(factors));

  const Operator s22 = embed(transition(2, 2), 0, dims);
  const Operator s33 = embed(transition(3, 3), 0, dims);
  const Operator s12 = embed(transition(1, 2), 0, dims);
  const Operator s21 = embed(transition(2, 1), 0, dims);
  const Operator s23 = embed(transition(2, 3), 0, dims);
  const Operator a_single = annihilation(options.cutoff);

  std::vector<Operator> a;
  a.reserve(modes.size());
  for (std::size_t k = 0; k < modes.size(); ++k) a.push_back(embed(a_single, k + 1, dims));

  Operator H = frame.Delta_s * s22 + frame.Delta_sc * s33;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const double Delta_n = modes[k].omega - drive.omega_s;
    H += Delta_n * (a[k].adjoint() * a[k]);
    const Operator exchange = a[k] * s21;
    H -= modes[k].g * (exchange + exchange.adjoint());
  }
  const double Omega_s_chi = xi * drive.Omega_s_mu;
  const Operator pump = drive.Omega_s_mu * s12 + drive.Omega_c * s23 + Omega_s_chi * a[0];
  H -= pump + pump.adjoint();

  std::vector<Jump> jumps;
  jumps.push_back({s12, frame.gamma_21});
  jumps.push_back({s23, em.gamma_32});
  for (std::size_t k = 0; k < modes.size(); ++k) jumps.push_back({a[k], modes[k].kappa});

  const double chi = xi * em.mu;
  Operator P = chi * a[0] + em.mu * s12;

  std::vector<std::string> warnings;
  if (drive.Omega_s_mu > em.gamma_21) {
    warnings.emplace_back("signal Rabi frequency exceeds gamma_21; weak-drive regime not satisfied");
  }
  return {dims, std::move(H), std::move(jumps), std::move(P), label, std::move(warnings)};
}

}  // namespace

bool EffectiveParams::valid() const {
  for (double a : alpha) {
    if (!(a < kAlphaValidityLimit)) return false;
  }
  return true;
}

std::string ModelLabel::to_string() const {
  return (kind == ModelKind::ExactMultimode ? "exact_N" : "effective_N") + std::to_string(N);
}

ModelSystem build_exact(const PlasmonSpectrum& spectrum, const EmitterParams& em,
                        const DriveParams& drive, int N, const BuildOptions& options) {
  if (N < 1 || N > spectrum.mode_count()) {
    throw DomainError("build_exact: N must be between 1 and the number of derived modes");
  }
  const double Delta_s = signal_detuning(em, drive);
  const EmitterFrame frame{Delta_s, Delta_s + drive.Delta_c, em.gamma_21};
  return assemble(frame, std::span(spectrum.modes).first(static_cast<std::size_t>(N)),
                  spectrum.xi, em, drive, options, {ModelKind::ExactMultimode, N});
}

EffectiveParams effective_params(const PlasmonSpectrum& spectrum, const EmitterParams& em,
                                 const DriveParams& drive, int N,
                                 AlphaDenominator denominator) {
  if (N < 1 || N > spectrum.mode_count()) {
    throw DomainError("effective_params: N must be between 1 and the number of derived modes");
  }
  EffectiveParams out;
  double shift = 0.0;
  double broadening = 0.0;
  for (int idx = 1; idx < N; ++idx) {
    const PlasmonMode& m = spectrum.modes[static_cast<std::size_t>(idx)];
    const double detuning = m.omega - em.omega_21;
    const double rate = denominator == AlphaDenominator::AsPrinted
                            ? m.kappa - em.gamma_21
                            : m.kappa + em.gamma_21;
    const double alpha = m.g * m.g / (detuning * detuning + rate * rate / 4.0);
    out.alpha.push_back(alpha);
    shift += alpha * detuning;
    broadening += alpha * (m.kappa - em.gamma_21);
  }
  out.omega_21_eff = em.omega_21 - shift;
  out.Delta_s_eff = out.omega_21_eff - drive.omega_s;
  out.Delta_c_eff = drive.Delta_c + shift;
  out.gamma_21_eff = em.gamma_21 + broadening;
  return out;
}

ModelSystem build_effective(const EffectiveParams& effp, const PlasmonSpectrum& spectrum,
                            const EmitterParams& em, const DriveParams& drive,
                            const BuildOptions& options) {
  if (spectrum.modes.empty()) throw DomainError("build_effective needs the dipole mode");
  const EmitterFrame frame{effp.Delta_s_eff, effp.Delta_s_eff + effp.Delta_c_eff,
                           effp.gamma_21_eff};
  const int N = static_cast<int>(effp.alpha.size()) + 1;
  ModelSystem model = assemble(frame, std::span(spectrum.modes).first(1), spectrum.xi, em,
                               drive, options, {ModelKind::EffectiveSingleMode, N});
  if (!effp.valid()) {
    model.warnings.emplace_back(
        "some alpha_n >= 0.1: emitter too close to the particle for adiabatic elimination");
  }
  return model;
}

double intensity(const ModelSystem& model, const DensityMatrix& rho) {
  const Operator& P = model.polarization;
  const double I = expect(P.adjoint() * P, rho).real();
  return I < 0.0 ? 0.0 : I;
}

double g2_zero(const ModelSystem& model, const DensityMatrix& rho) {
  const Operator& P = model.polarization;
  const double I = expect(P.adjoint() * P, rho).real();
  if (!(I > 1e-30)) throw UndefinedCorrelation("g2(0) undefined: intensity vanishes");
  const Operator P2 = P * P;
  const double G = expect(P2.adjoint() * P2, rho).real();
  return std::max(G, 0.0) / (I * I);
}

Observables steady_observables(const ModelSystem& model, const SteadyStateOptions& options) {
  const Superoperator L = liouvillian(model.hamiltonian, model.jumps);
  const DensityMatrix rho = steady_state(L, options);
  return {intensity(model, rho), g2_zero(model, rho)};
}

}  // namespace qeplas
