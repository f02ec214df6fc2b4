#include "qeplas/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "qeplas/analytic.hpp"
#include "qeplas/errors.hpp"

namespace qeplas {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double max_of(const std::vector<double>& v) {
  return v.empty() ? kNaN : *std::max_element(v.begin(), v.end());
}

double max_relative_change(const std::vector<Observables>& prev,
                           const std::vector<Observables>& next, bool g2) {
  double worst = 0.0;
  for (std::size_t i = 0; i < prev.size(); ++i) {
    const double a = g2 ? prev[i].g2 : prev[i].intensity;
    const double b = g2 ? next[i].g2 : next[i].intensity;
    worst = std::max(worst, std::abs(b - a) / std::abs(a));
  }
  return worst;
}

// Lower rank wins the reference role in a comparison pair.
int reference_rank(Tier t) {
  switch (t) {
    case Tier::Effective: return 0;
    case Tier::Exact: return 1;
    case Tier::Analytic: return 2;
  }
  return 3;
}

}  // namespace

std::string status_name(PointStatus status) {
  switch (status) {
    case PointStatus::Ok: return "ok";
    case PointStatus::Skipped: return "skipped";
    case PointStatus::SolverFailure: return "solver_error";
    case PointStatus::Undefined: return "undefined";
  }
  return "unknown";
}

std::vector<double> SweepTable::g2(std::size_t tier) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const SweepRow& r : rows) out.push_back(r.tiers.at(tier).ok() ? r.tiers[tier].g2 : kNaN);
  return out;
}

std::vector<double> SweepTable::intensity(std::size_t tier) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const SweepRow& r : rows) {
    out.push_back(r.tiers.at(tier).ok() ? r.tiers[tier].intensity : kNaN);
  }
  return out;
}

std::vector<double> SweepTable::axis_values() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const SweepRow& r : rows) out.push_back(r.axis_value);
  return out;
}

std::size_t SweepTable::failed_points() const {
  std::size_t failed = 0;
  for (const SweepRow& r : rows) {
    for (const TierResult& t : r.tiers) {
      if (t.status == PointStatus::SolverFailure || t.status == PointStatus::Undefined) ++failed;
    }
  }
  return failed;
}

DriveParams drive_at(const RunConfig& config, double axis_value) {
  DriveParams d = config.drive;
  if (config.sweep.axis == SweepAxis::SignalFrequency) {
    d.omega_s = axis_value;
  } else {
    d.Omega_c = axis_value;
  }
  return d;
}

PlasmonSpectrum spectrum_for(const RunConfig& config, int extra_modes) {
  return derive_spectrum(config.max_modes() + extra_modes, config.geometry, config.emitter,
                         config.material);
}

TierResult evaluate_tier(const TierSpec& tier, const PlasmonSpectrum& spectrum,
                         const RunConfig& config, const DriveParams& drive,
                         const SteadyStateOptions& solver) {
  TierResult out;
  try {
    Observables obs;
    if (tier.tier == Tier::Exact) {
      const ModelSystem model =
          build_exact(spectrum, config.emitter, drive, tier.N, {tier.cutoff, 729});
      obs = steady_observables(model, solver);
    } else {
      const EffectiveParams effp = effective_params(spectrum, config.emitter, drive, tier.N,
                                                    config.alpha_denominator);
      if (tier.tier == Tier::Effective) {
        const ModelSystem model =
            build_effective(effp, spectrum, config.emitter, drive, {tier.cutoff, 729});
        obs = steady_observables(model, solver);
      } else {
        obs.intensity = intensity_closed(effp, spectrum, config.emitter, drive);
        obs.g2 = g2_closed(effp, spectrum, config.emitter, drive);
      }
    }
    out.intensity = obs.intensity;
    out.g2 = obs.g2;
    out.status = PointStatus::Ok;
  } catch (const UndefinedCorrelation& e) {
    out.status = PointStatus::Undefined;
    out.message = e.what();
  } catch (const std::exception& e) {
    out.status = PointStatus::SolverFailure;
    out.message = e.what();
  }
  return out;
}

SweepTable run_sweep(const RunConfig& config, const ExecOptions& exec) {
  config.validate();
  const PlasmonSpectrum spectrum = spectrum_for(config);
  const std::vector<double> grid = config.sweep.values();

  SweepTable table;
  table.axis = config.sweep.axis;
  table.tiers = config.models;
  table.rows.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table.rows[i].axis_value = grid[i];
    table.rows[i].tiers.resize(config.models.size());
  }

  const std::size_t ntiers = config.models.size();
  detail::parallel_for(grid.size() * ntiers, exec.threads, [&](std::size_t task) {
    const std::size_t i = task / ntiers;
    const std::size_t k = task % ntiers;
    const TierSpec& tier = config.models[k];
    if (i % static_cast<std::size_t>(tier.stride) != 0) return;
    table.rows[i].tiers[k] =
        evaluate_tier(tier, spectrum, config, drive_at(config, grid[i]), exec.solver);
  });
  return table;
}

SweepTable run_spectrum(const RunConfig& config, const ExecOptions& exec) {
  if (config.sweep.axis != SweepAxis::SignalFrequency) {
    throw ConfigError("spectrum needs sweep.axis = signal_frequency");
  }
  return run_sweep(config, exec);
}

SweepTable run_control_sweep(const RunConfig& config, const ExecOptions& exec) {
  if (config.sweep.axis != SweepAxis::ControlRabi) {
    throw ConfigError("control-sweep needs sweep.axis = control_rabi");
  }
  return run_sweep(config, exec);
}

std::vector<PhaseRow> run_phase_sweep(const RunConfig& config, const ExecOptions& exec) {
  config.validate();
  if (config.sweep.axis != SweepAxis::SignalFrequency) {
    throw ConfigError("phases needs sweep.axis = signal_frequency");
  }
  const auto analytic = std::find_if(config.models.begin(), config.models.end(),
                                     [](const TierSpec& t) { return t.tier == Tier::Analytic; });
  if (analytic == config.models.end()) throw ConfigError("phases needs an analytic tier");

  const PlasmonSpectrum spectrum = spectrum_for(config);
  const std::vector<double> grid = config.sweep.values();
  std::vector<PhaseRow> rows(grid.size());
  detail::parallel_for(grid.size(), exec.threads, [&](std::size_t i) {
    PhaseRow& row = rows[i];
    row.omega_s = grid[i];
    try {
      const DriveParams drive = drive_at(config, grid[i]);
      const EffectiveParams effp =
          effective_params(spectrum, config.emitter, drive, analytic->N, config.alpha_denominator);
      const AmplitudeSet c = amplitudes(effp, spectrum, config.emitter, drive);
      if (c.C02 == 0.0 || c.C11 == 0.0 || c.C12 == 0.0 || c.C21 == 0.0) {
        row.status = PointStatus::Undefined;
        return;
      }
      row.phi1_1 = c.phi1_1();
      row.phi1_2 = c.phi1_2();
      row.dphi1 = c.one_quantum_phase_difference();
      row.phi2_1 = c.phi2_1();
      row.phi2_2 = c.phi2_2();
      row.dphi2 = c.two_quantum_phase_difference();
    } catch (const std::exception&) {
      row.status = PointStatus::SolverFailure;
    }
  });
  return rows;
}

ConvergenceReport converge(const RunConfig& config, const ExecOptions& exec) {
  config.validate();
  const ConvergenceSettings& cs = config.convergence;
  ConvergenceReport report;

  int cutoff = 3;
  for (const TierSpec& t : config.models) {
    if (t.tier == Tier::Effective) {
      cutoff = t.cutoff;
      break;
    }
  }
  report.cutoff = cutoff;

  SweepGrid probe_grid = config.sweep;
  probe_grid.points = cs.probe_points;
  report.probe = cs.probe_points == 1
                     ? std::vector<double>{0.5 * (config.sweep.start + config.sweep.stop)}
                     : probe_grid.values();

  const PlasmonSpectrum spectrum =
      derive_spectrum(cs.max_N, config.geometry, config.emitter, config.material);

  auto evaluate = [&](int N, int fock) {
    std::vector<Observables> out(report.probe.size());
    detail::parallel_for(report.probe.size(), exec.threads, [&](std::size_t i) {
      const DriveParams drive = drive_at(config, report.probe[i]);
      const EffectiveParams effp =
          effective_params(spectrum, config.emitter, drive, N, config.alpha_denominator);
      out[i] = steady_observables(build_effective(effp, spectrum, config.emitter, drive,
                                                  {fock, 729}),
                                  exec.solver);
    });
    return out;
  };

  // Mode count: accept N once mode N+1 no longer matters.
  bool n_done = std::isinf(cs.n_tolerance);
  report.N = 1;
  if (!n_done) {
    std::vector<Observables> prev = evaluate(1, cutoff);
    for (int N = 1; N < cs.max_N; ++N) {
      std::vector<Observables> next = evaluate(N + 1, cutoff);
      const ConvergenceStep step{"N", N, max_relative_change(prev, next, false),
                                 max_relative_change(prev, next, true)};
      report.steps.push_back(step);
      if (step.change_intensity <= cs.n_tolerance && step.change_g2 <= cs.n_tolerance) {
        report.N = N;
        n_done = true;
        break;
      }
      prev = std::move(next);
    }
  }
  if (!n_done) {
    std::ostringstream os;
    os << "mode count did not converge to " << cs.n_tolerance << " by N=" << cs.max_N;
    if (!report.steps.empty()) {
      os << " (last change: I " << report.steps.back().change_intensity << ", g2 "
         << report.steps.back().change_g2 << ")";
    }
    throw SolverError(os.str());
  }

  bool c_done = std::isinf(cs.cutoff_tolerance);
  if (!c_done) {
    std::vector<Observables> prev = evaluate(report.N, cutoff);
    for (int fock = cutoff; fock < cs.max_cutoff; ++fock) {
      std::vector<Observables> next = evaluate(report.N, fock + 1);
      const ConvergenceStep step{"cutoff", fock, max_relative_change(prev, next, false),
                                 max_relative_change(prev, next, true)};
      report.steps.push_back(step);
      if (step.change_intensity <= cs.cutoff_tolerance &&
          step.change_g2 <= cs.cutoff_tolerance) {
        report.cutoff = fock;
        c_done = true;
        break;
      }
      prev = std::move(next);
    }
  }
  if (!c_done) {
    std::ostringstream os;
    os << "Fock cutoff did not converge to " << cs.cutoff_tolerance << " by cutoff="
       << cs.max_cutoff;
    throw SolverError(os.str());
  }
  return report;
}

ComparisonReport compare_models(const SweepTable& table) {
  ComparisonReport report;
  const std::size_t n = table.tiers.size();
  if (n < 2) {
    report.notice = "only one tier enabled; nothing to compare";
    return report;
  }

  auto count_kind = [&](Tier t) {
    return std::count_if(table.tiers.begin(), table.tiers.end(),
                         [t](const TierSpec& s) { return s.tier == t; });
  };
  const bool single_exact_effective = count_kind(Tier::Exact) == 1 && count_kind(Tier::Effective) == 1;

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      std::size_t ref = a;
      std::size_t cmp = b;
      if (reference_rank(table.tiers[b].tier) < reference_rank(table.tiers[a].tier)) {
        std::swap(ref, cmp);
      }
      const TierSpec& rs = table.tiers[ref];
      const TierSpec& cs = table.tiers[cmp];

      PairComparison pc;
      pc.tier = cs.label;
      pc.reference = rs.label;

      double ref_max = 0.0;
      for (const SweepRow& row : table.rows) {
        if (row.tiers[ref].ok() && row.tiers[cmp].ok()) {
          ref_max = std::max(ref_max, row.tiers[ref].intensity);
        }
      }
      for (const SweepRow& row : table.rows) {
        const TierResult& r = row.tiers[ref];
        const TierResult& c = row.tiers[cmp];
        if (!r.ok() || !c.ok()) continue;
        pc.axis.push_back(row.axis_value);
        pc.g2_deviation.push_back(std::abs(c.g2 - r.g2) / std::abs(r.g2));
        pc.intensity_deviation.push_back(ref_max > 0.0 ? std::abs(c.intensity - r.intensity) / ref_max
                                                       : 0.0);
      }
      pc.points = pc.axis.size();
      pc.max_g2 = max_of(pc.g2_deviation);
      pc.median_g2 = median(pc.g2_deviation);
      pc.max_intensity = max_of(pc.intensity_deviation);
      pc.median_intensity = median(pc.intensity_deviation);

      const Tier tr = rs.tier;
      const Tier tc = cs.tier;
      if (tr == Tier::Effective && tc == Tier::Exact &&
          (rs.N == cs.N || single_exact_effective)) {
        pc.has_threshold = true;
        pc.max_g2_threshold = 0.10;
        pc.median_g2_threshold = 0.10;
      } else if (tr == Tier::Effective && tc == Tier::Analytic && rs.N == cs.N) {
        pc.has_threshold = true;
        pc.max_g2_threshold = 0.05;
        pc.median_g2_threshold = 0.02;
      }
      if (pc.has_threshold) {
        pc.pass = pc.points > 0 && pc.max_g2 <= pc.max_g2_threshold &&
                  pc.median_g2 <= pc.median_g2_threshold;
      }
      report.pairs.push_back(std::move(pc));
    }
  }
  return report;
}

ComparisonReport compare_models(const RunConfig& config, const ExecOptions& exec) {
  return compare_models(run_sweep(config, exec));
}

}  // namespace qeplas
