#include "qeplas/analytic.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "qeplas/errors.hpp"

namespace qeplas {

namespace {

using C = std::complex<double>;

Eigen::Vector3cd solve3(const Eigen::Matrix3cd& A, const Eigen::Vector3cd& b, const char* block) {
  Eigen::FullPivLU<Eigen::Matrix3cd> lu(A);
  if (!lu.isInvertible()) {
    throw SolverError(std::string("singular ") + block + " amplitude block");
  }
  return lu.solve(b);
}

}  // namespace

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(angle, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  if (w > std::numbers::pi) w -= two_pi;
  return w;
}

double AmplitudeSet::phi1_1() const { return std::arg(C02); }
double AmplitudeSet::phi1_2() const { return std::arg(C11); }
double AmplitudeSet::phi2_1() const { return std::arg(C12); }
double AmplitudeSet::phi2_2() const { return std::arg(C21); }

double AmplitudeSet::one_quantum_phase_difference() const {
  return wrap_phase(phi1_2() - phi1_1());
}

double AmplitudeSet::two_quantum_phase_difference() const {
  return wrap_phase(phi2_2() - phi2_1());
}

ComplexDetunings complex_detunings(const EffectiveParams& effp, const PlasmonMode& mode1,
                                   const EmitterParams& em, const DriveParams& drive) {
  const double Delta_1 = mode1.omega - drive.omega_s;
  return {C(Delta_1, -0.5 * mode1.kappa), C(effp.Delta_s_eff, -0.5 * effp.gamma_21_eff),
          C(effp.Delta_s_eff + effp.Delta_c_eff, -0.5 * em.gamma_32)};
}

AmplitudeSet amplitudes(const EffectiveParams& effp, const PlasmonSpectrum& spectrum,
                        const EmitterParams& em, const DriveParams& drive) {
  const PlasmonMode& m1 = spectrum.dipole_mode();
  const auto [D1, Ds, Dsc] = complex_detunings(effp, m1, em, drive);
  const double g = m1.g;
  const double Oc = drive.Omega_c;
  const double Osmu = drive.Omega_s_mu;
  const double Oschi = spectrum.xi * Osmu;
  const double r2 = std::numbers::sqrt2;

  // One excitation: unknowns (C02, C11, C03), fed by C01 = 1.
  Eigen::Matrix3cd A;
  A << Ds, -g, -Oc,
       -g, D1, 0.0,
       -Oc, 0.0, Dsc;
  const Eigen::Vector3cd one = solve3(A, Eigen::Vector3cd(Osmu, Oschi, 0.0), "one-quantum");

  AmplitudeSet c{};
  c.C02 = one(0);
  c.C11 = one(1);
  c.C03 = one(2);

  // Two excitations: unknowns (C12, C21, C13), fed by the one-excitation amplitudes.
  Eigen::Matrix3cd B;
  B << D1 + Ds, -r2 * g, -Oc,
       -r2 * g, 2.0 * D1, 0.0,
       -Oc, 0.0, D1 + Dsc;
  const Eigen::Vector3cd src(Osmu * c.C11 + Oschi * c.C02, r2 * Oschi * c.C11, Oschi * c.C03);
  const Eigen::Vector3cd two = solve3(B, src, "two-quantum");
  c.C12 = two(0);
  c.C21 = two(1);
  c.C13 = two(2);
  return c;
}

double intensity_from_amplitudes(const AmplitudeSet& c, double mu, double xi) {
  const double w = std::norm(c.C02) + xi * xi * std::norm(c.C11) +
                   2.0 * xi * (std::conj(c.C02) * c.C11).real();
  return mu * mu * w;
}

double g2_from_amplitudes(const AmplitudeSet& c, double xi) {
  const double one = std::norm(c.C02) + xi * xi * std::norm(c.C11) +
                     2.0 * xi * (std::conj(c.C02) * c.C11).real();
  if (!(one > 0.0)) throw UndefinedCorrelation("g2(0) undefined: one-quantum weight vanishes");
  const double two = 2.0 * std::norm(c.C12) + xi * xi * std::norm(c.C21) +
                     2.0 * std::numbers::sqrt2 * xi * (std::conj(c.C12) * c.C21).real();
  return 2.0 * xi * xi * two / (one * one);
}

double intensity_closed(const EffectiveParams& effp, const PlasmonSpectrum& spectrum,
                        const EmitterParams& em, const DriveParams& drive) {
  const PlasmonMode& m1 = spectrum.dipole_mode();
  const auto [D1, Ds, Dsc] = complex_detunings(effp, m1, em, drive);
  const double g = m1.g;
  const double xi = spectrum.xi;
  const double Oc2 = drive.Omega_c * drive.Omega_c;
  const C dressed = Ds - Oc2 / Dsc;
  const C ratio = (D1 + xi * xi * dressed + 2.0 * xi * g) / (D1 * dressed - g * g);
  return em.mu * em.mu * drive.Omega_s_mu * drive.Omega_s_mu * std::norm(ratio);
}

double g2_closed(const EffectiveParams& effp, const PlasmonSpectrum& spectrum,
                 const EmitterParams& em, const DriveParams& drive) {
  const PlasmonMode& m1 = spectrum.dipole_mode();
  const auto [D1, Ds, Dsc] = complex_detunings(effp, m1, em, drive);
  const double g = m1.g;
  const double xi = spectrum.xi;
  const double Oc2 = drive.Omega_c * drive.Omega_c;

  const C dressed = Ds - Oc2 / Dsc;
  const C plasmon_arm = D1 + xi * g;
  const C response = D1 + 2.0 * xi * g + xi * xi * dressed;
  if (std::abs(response) == 0.0) {
    throw UndefinedCorrelation("g2(0) undefined: one-quantum response vanishes");
  }
  const C numerator = plasmon_arm * plasmon_arm *
                      (D1 * dressed - g * g +
                       plasmon_arm * plasmon_arm * (1.0 + Oc2 / (Dsc * (D1 + Dsc))));
  const C two_quantum = D1 * (D1 + Ds - Oc2 / (D1 + Dsc)) - g * g;
  return std::norm(1.0 - numerator / (two_quantum * response * response));
}

DressedEnergies dressed_energies(const EffectiveParams& effp, const DriveParams& drive) {
  const double dc = effp.Delta_c_eff;
  const double split = std::sqrt(dc * dc + 4.0 * drive.Omega_c * drive.Omega_c);
  return {effp.omega_21_eff + 0.5 * (dc + split), effp.omega_21_eff + 0.5 * (dc - split)};
}

double lower_polariton(double level, const PlasmonMode& mode1) {
  const double d = level - mode1.omega;
  return mode1.omega + 0.5 * (d - std::sqrt(d * d + 4.0 * mode1.g * mode1.g));
}

double blockade_frequency(const EffectiveParams& effp, const PlasmonMode& mode1) {
  return lower_polariton(effp.omega_21_eff, mode1);
}

DressedEnergies blockade_frequencies_dressed(const EffectiveParams& effp,
                                             const PlasmonMode& mode1,
                                             const DriveParams& drive) {
  const DressedEnergies one = dressed_energies(effp, drive);
  return {lower_polariton(one.plus, mode1), lower_polariton(one.minus, mode1)};
}

}  // namespace qeplas
