#pragma once

// Run configuration for sweeps. The on-disk format is JSON; every section is
// checked against a fixed key set and unknown keys are rejected. See
// docs/config.md for the full schema.

#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qeplas/models.hpp"
#include "qeplas/plasmonics.hpp"

namespace qeplas {

enum class SweepAxis { SignalFrequency, ControlRabi };

struct SweepGrid {
  SweepAxis axis = SweepAxis::SignalFrequency;
  double start = 0.0;
  double stop = 0.0;
  int points = 2;

  /// Evenly spaced values, endpoints exact.
  std::vector<double> values() const;
};

enum class Tier { Exact, Effective, Analytic };

struct TierSpec {
  Tier tier = Tier::Effective;
  int N = 1;
  int cutoff = 3;
  // Evaluate every `stride`-th grid point (index % stride == 0); others are skipped.
  int stride = 1;
  std::string label;  // column prefix; defaults to "<tier>_N<N>"
};

struct ConvergenceSettings {
  double n_tolerance = 1e-3;
  double cutoff_tolerance = 1e-4;
  int probe_points = 10;
  int max_N = 25;
  int max_cutoff = 8;
};

struct RunConfig {
  std::string name;
  DrudeParams material;
  GeometryParams geometry;
  EmitterParams emitter;
  DriveParams drive;
  SweepGrid sweep;
  std::vector<TierSpec> models;
  ConvergenceSettings convergence;
  AlphaDenominator alpha_denominator = AlphaDenominator::AsPrinted;
  std::string output;

  /// Largest N requested by any tier.
  int max_modes() const;
  void validate() const;
};

std::string tier_name(Tier tier);
std::string axis_name(SweepAxis axis);

/// Parses JSON text into a validated RunConfig. Throws ConfigError.
RunConfig parse_config(std::string_view json_text);

RunConfig load_config(const std::filesystem::path& path);

/// Checked-in presets compiled into the library.
std::vector<std::string> preset_names();
std::string preset_text(std::string_view name);
RunConfig load_preset(std::string_view name);

}  // namespace qeplas
