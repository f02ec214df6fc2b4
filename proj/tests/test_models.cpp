#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qeplas/errors.hpp"
#include "qeplas/models.hpp"

using namespace qeplas;

namespace {

DriveParams drive(double omega_s, double Omega_c = 0.0) { return {omega_s, 0.005, Omega_c, 0.0}; }

}  // namespace

TEST_CASE("exact and effective single-mode models are identical") {
  const auto s = fixtures::reference(1);
  for (double Oc : {0.0, 0.2, 1.5}) {
    const DriveParams d = drive(3352.0, Oc);
    const ModelSystem exact = build_exact(s.spectrum, s.em, d, 1);
    const EffectiveParams effp = effective_params(s.spectrum, s.em, d, 1);
    CHECK(effp.alpha.empty());
    const ModelSystem eff = build_effective(effp, s.spectrum, s.em, d);
    CHECK(exact.hamiltonian.matrix() == eff.hamiltonian.matrix());
    CHECK(exact.polarization.matrix() == eff.polarization.matrix());
    REQUIRE(exact.jumps.size() == eff.jumps.size());
    for (std::size_t k = 0; k < exact.jumps.size(); ++k) {
      CHECK(exact.jumps[k].rate == eff.jumps[k].rate);
      CHECK(exact.jumps[k].op.matrix() == eff.jumps[k].op.matrix());
    }
    CHECK(exact.label.to_string() == "exact_N1");
    CHECK(eff.label.to_string() == "effective_N1");
  }
}

TEST_CASE("effective parameters fold in the eliminated modes") {
  const auto s = fixtures::reference(10);
  const DriveParams d = drive(3351.0, 0.2);
  const EffectiveParams effp = effective_params(s.spectrum, s.em, d, 10);
  REQUIRE(effp.alpha.size() == 9);
  CHECK(effp.valid());
  double shift = 0.0, broadening = 0.0;
  for (int k = 1; k < 10; ++k) {
    const auto& m = s.spectrum.modes[k];
    const double Dn = m.omega - s.em.omega_21;
    const double half = 0.5 * (m.kappa - s.em.gamma_21);
    const double a = m.g * m.g / (Dn * Dn + half * half);
    CHECK(effp.alpha[k - 1] == doctest::Approx(a).epsilon(1e-12));
    shift += a * Dn;
    broadening += a * (m.kappa - s.em.gamma_21);
  }
  CHECK(effp.Delta_s_eff == effp.omega_21_eff - d.omega_s);
  CHECK(std::abs(effp.Delta_s_eff - (signal_detuning(s.em, d) - shift)) <= 1e-12);
  CHECK(effp.omega_21_eff == doctest::Approx(s.em.omega_21 - shift).epsilon(1e-14));
  CHECK(effp.Delta_c_eff == doctest::Approx(d.Delta_c + shift).epsilon(1e-12));
  CHECK(effp.gamma_21_eff == doctest::Approx(s.em.gamma_21 + broadening).epsilon(1e-12));
  CHECK(effp.alpha[0] == doctest::Approx(1.0865e-3).epsilon(1e-3));
}

TEST_CASE("alpha denominator variants") {
  const auto s = fixtures::reference(3);
  const DriveParams d = drive(3351.0);
  const auto printed = effective_params(s.spectrum, s.em, d, 3, AlphaDenominator::AsPrinted);
  const auto summed = effective_params(s.spectrum, s.em, d, 3, AlphaDenominator::SumOfRates);
  const auto& m = s.spectrum.modes[1];
  const double Dn = m.omega - s.em.omega_21;
  const double half = 0.5 * (m.kappa + s.em.gamma_21);
  CHECK(summed.alpha[0] == doctest::Approx(m.g * m.g / (Dn * Dn + half * half)).epsilon(1e-12));
  CHECK(summed.alpha[0] != printed.alpha[0]);
}

TEST_CASE("exact model respects the dimension cap") {
  const auto s = fixtures::reference(6);
  CHECK_NOTHROW(build_exact(s.spectrum, s.em, drive(3351.0), 5));
  CHECK_THROWS_AS(build_exact(s.spectrum, s.em, drive(3351.0), 6), DomainError);
  CHECK_THROWS_AS(build_exact(s.spectrum, s.em, drive(3351.0), 7), DomainError);
  BuildOptions opts;
  opts.cutoff = 4;
  CHECK_THROWS_AS(build_exact(s.spectrum, s.em, drive(3351.0), 4, opts), DomainError);
}

TEST_CASE("strong signal drive raises a warning") {
  const auto s = fixtures::reference(2);
  DriveParams d = drive(3351.0);
  d.Omega_s_mu = 0.2;
  CHECK_FALSE(build_exact(s.spectrum, s.em, d, 2).warnings.empty());
  CHECK(build_exact(s.spectrum, s.em, drive(3351.0), 2).warnings.empty());
}

TEST_CASE("steady-state observables are physical") {
  const auto s = fixtures::reference(2);
  for (double ws : {3340.0, 3350.3, 3352.0, 3360.0}) {
    const DriveParams d = drive(ws, 0.2);
    const ModelSystem exact = build_exact(s.spectrum, s.em, d, 2);
    const Superoperator L = liouvillian(exact.hamiltonian, exact.jumps);
    const DensityMatrix rho = steady_state(L);
    CHECK(rho.min_eigenvalue() >= -1e-8);
    CHECK(std::abs(rho.matrix().trace() - 1.0) <= 1e-10);
    const double I = intensity(exact, rho);
    CHECK(I > 0.0);
    CHECK(g2_zero(exact, rho) >= 0.0);
    const Observables obs = steady_observables(exact);
    CHECK(obs.intensity == doctest::Approx(I).epsilon(1e-12));
  }
}

TEST_CASE("g2 is undefined without a drive") {
  const auto s = fixtures::reference(1);
  DriveParams d = drive(3351.0);
  d.Omega_s_mu = 0.0;
  const EffectiveParams effp = effective_params(s.spectrum, s.em, d, 1);
  CHECK_THROWS_AS(steady_observables(build_effective(effp, s.spectrum, s.em, d)), UndefinedCorrelation);
}
