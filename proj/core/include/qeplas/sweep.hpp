#pragma once

// Sweep execution over the three model tiers. Grid points are independent
// tasks run on a worker pool; results are always gathered in axis order so
// output is identical for any thread count.

#include <string>
#include <vector>

#include "qeplas/config.hpp"
#include "qeplas/models.hpp"
#include "qeplas/plasmonics.hpp"

namespace qeplas {

struct ExecOptions {
  int threads = 1;
  SteadyStateOptions solver;
};

enum class PointStatus { Ok, Skipped, SolverFailure, Undefined };

std::string status_name(PointStatus status);

struct TierResult {
  double intensity = 0.0;
  double g2 = 0.0;
  PointStatus status = PointStatus::Skipped;
  std::string message;

  bool ok() const { return status == PointStatus::Ok; }
};

struct SweepRow {
  double axis_value = 0.0;
  std::vector<TierResult> tiers;  // same order as SweepTable::tiers
};

struct SweepTable {
  SweepAxis axis = SweepAxis::SignalFrequency;
  std::vector<TierSpec> tiers;
  std::vector<SweepRow> rows;

  /// Values of one tier's g2 / intensity, NaN where not evaluated.
  std::vector<double> g2(std::size_t tier) const;
  std::vector<double> intensity(std::size_t tier) const;
  std::vector<double> axis_values() const;
  std::size_t failed_points() const;
};

/// Drive at one grid point: the template with the swept quantity replaced.
DriveParams drive_at(const RunConfig& config, double axis_value);

/// Plasmon spectrum with enough modes for every tier of the config.
PlasmonSpectrum spectrum_for(const RunConfig& config, int extra_modes = 0);

/// Evaluates one tier at one drive. Solver failures are reported in the
/// status, never thrown.
TierResult evaluate_tier(const TierSpec& tier, const PlasmonSpectrum& spectrum,
                         const RunConfig& config, const DriveParams& drive,
                         const SteadyStateOptions& solver = {});

/// Evaluates every tier of `config` over its grid, whatever the axis.
SweepTable run_sweep(const RunConfig& config, const ExecOptions& exec = {});

/// Signal-frequency spectra of I and g2 (requires axis = signal_frequency).
SweepTable run_spectrum(const RunConfig& config, const ExecOptions& exec = {});

/// g2 versus control Rabi frequency at fixed signal (requires axis = control_rabi).
SweepTable run_control_sweep(const RunConfig& config, const ExecOptions& exec = {});

struct PhaseRow {
  double omega_s = 0.0;
  double phi1_1 = 0.0, phi1_2 = 0.0, dphi1 = 0.0;
  double phi2_1 = 0.0, phi2_2 = 0.0, dphi2 = 0.0;
  PointStatus status = PointStatus::Ok;
};

/// Phases of C02, C11 (one-quantum) and C12, C21 (two-quantum) along the
/// signal-frequency grid, from the first analytic tier of the config.
std::vector<PhaseRow> run_phase_sweep(const RunConfig& config, const ExecOptions& exec = {});

struct ConvergenceStep {
  std::string stage;  // "N" or "cutoff"
  int value = 0;      // N or cutoff before the increment
  double change_intensity = 0.0;
  double change_g2 = 0.0;
};

struct ConvergenceReport {
  int N = 1;
  int cutoff = 3;
  std::vector<double> probe;
  std::vector<ConvergenceStep> steps;
};

/// Smallest N (then cutoff) for which adding one more mode (Fock level)
/// changes I and g2 of the effective model by at most the configured
/// tolerance on the probe grid. Throws SolverError on non-convergence.
ConvergenceReport converge(const RunConfig& config, const ExecOptions& exec = {});

struct PairComparison {
  std::string tier;       // compared tier label
  std::string reference;  // reference tier label (denominator)
  std::size_t points = 0;
  std::vector<double> axis;
  std::vector<double> g2_deviation;         // |g2 - g2_ref| / g2_ref
  std::vector<double> intensity_deviation;  // |I - I_ref| / max I_ref
  double max_g2 = 0.0;
  double median_g2 = 0.0;
  double max_intensity = 0.0;
  double median_intensity = 0.0;
  bool has_threshold = false;
  double max_g2_threshold = 0.0;
  double median_g2_threshold = 0.0;
  bool pass = true;
};

struct ComparisonReport {
  std::vector<PairComparison> pairs;
  std::string notice;
};

/// Pairwise tier deviations on the points both tiers evaluated.
ComparisonReport compare_models(const SweepTable& table);

/// Runs the configured sweep, then compares.
ComparisonReport compare_models(const RunConfig& config, const ExecOptions& exec = {});

}  // namespace qeplas
