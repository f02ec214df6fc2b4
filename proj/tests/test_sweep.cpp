#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qeplas/config.hpp"
#include "qeplas/errors.hpp"
#include "qeplas/output.hpp"
#include "qeplas/sweep.hpp"

using namespace qeplas;

namespace {

RunConfig small(double Omega_c = 0.2) {
  RunConfig c = load_preset("fig2b");
  c.drive.Omega_c = Omega_c;
  c.sweep.start = 3345.0;
  c.sweep.stop = 3358.0;
  c.sweep.points = 14;
  c.models = {{Tier::Exact, 2, 3, 4, "exact_N2"},
              {Tier::Effective, 4, 3, 1, "effective_N4"},
              {Tier::Analytic, 4, 3, 1, "analytic_N4"}};
  return c;
}

std::string csv(const SweepTable& t) {
  std::ostringstream os;
  write_sweep(t, os, OutputFormat::Csv);
  return os.str();
}

}  // namespace

TEST_CASE("sweep output is independent of the thread count") {
  const RunConfig c = small();
  ExecOptions one, four;
  four.threads = 4;
  CHECK(csv(run_spectrum(c, one)) == csv(run_spectrum(c, four)));
}

TEST_CASE("stride evaluates every k-th point only") {
  const SweepTable t = run_spectrum(small());
  REQUIRE(t.rows.size() == 14);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].tiers[0].ok() == (i % 4 == 0));
    CHECK(t.rows[i].tiers[1].ok());
  }
  CHECK(std::isnan(t.g2(0)[1]));
  CHECK(t.failed_points() == 0);
}

TEST_CASE("axis mismatch is an error") {
  CHECK_THROWS_AS(run_control_sweep(small()), ConfigError);
  CHECK_THROWS_AS(run_spectrum(load_preset("fig4")), ConfigError);
}

TEST_CASE("control sweep varies the control Rabi frequency") {
  RunConfig c = load_preset("fig4");
  c.sweep.points = 6;
  c.models = {{Tier::Effective, 1, 3, 1, "effective_N1"}, {Tier::Exact, 1, 3, 1, "exact_N1"}};
  const SweepTable t = run_control_sweep(c);
  REQUIRE(t.rows.size() == 6);
  CHECK(t.rows[5].axis_value == 5.0);
  for (const auto& row : t.rows) {
    CHECK(row.tiers[0].g2 == doctest::Approx(row.tiers[1].g2).epsilon(1e-9));
  }
}

TEST_CASE("phase sweep uses the analytic tier") {
  const auto rows = run_phase_sweep(small());
  REQUIRE(rows.size() == 14);
  for (const auto& r : rows) {
    CHECK(r.status == PointStatus::Ok);
    CHECK(std::abs(r.dphi1) <= 3.14159265359);
  }
  RunConfig no_analytic = small();
  no_analytic.models.pop_back();
  CHECK_THROWS_AS(run_phase_sweep(no_analytic), ConfigError);
}

TEST_CASE("convergence picks the smallest N whose increment is below tolerance") {
  RunConfig c = small(0.0);
  c.sweep.start = 3330.0;
  c.sweep.stop = 3375.0;
  c.convergence.probe_points = 10;
  const ConvergenceReport r = converge(c);
  CHECK(r.N <= 10);
  CHECK(r.N >= 2);
  CHECK(r.cutoff == 3);
  for (const auto& step : r.steps) {
    if (step.stage == "N" && step.value == r.N) {
      CHECK(step.change_g2 <= c.convergence.n_tolerance);
      CHECK(step.change_intensity <= c.convergence.n_tolerance);
    }
  }
  CHECK(r.probe.size() == 10);
}

TEST_CASE("infinite tolerance accepts the smallest settings") {
  RunConfig c = small();
  c.convergence.n_tolerance = INFINITY;
  c.convergence.cutoff_tolerance = INFINITY;
  const ConvergenceReport r = converge(c);
  CHECK(r.N == 1);
  CHECK(r.cutoff == 3);
}

TEST_CASE("unreachable tolerance reports non-convergence") {
  RunConfig c = small();
  c.convergence.n_tolerance = 1e-15;
  c.convergence.max_N = 3;
  CHECK_THROWS_AS(converge(c), SolverError);
}

TEST_CASE("comparison of tiers") {
  const ComparisonReport r = compare_models(run_spectrum(small()));
  CHECK(r.notice.empty());
  bool saw_eff_analytic = false;
  for (const auto& p : r.pairs) {
    if (p.tier == "analytic_N4" && p.reference == "effective_N4") {
      saw_eff_analytic = true;
      CHECK(p.points == 14);
      CHECK(p.has_threshold);
      CHECK(p.median_g2 < 0.02);
    }
    if (p.tier == "exact_N2") CHECK(p.points == 4);
  }
  CHECK(saw_eff_analytic);

  RunConfig single = small();
  single.models.resize(1);
  const ComparisonReport lone = compare_models(run_spectrum(single));
  CHECK(lone.pairs.empty());
  CHECK(lone.notice == "only one tier enabled; nothing to compare");
}
