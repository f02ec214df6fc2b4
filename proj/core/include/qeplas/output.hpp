#pragma once

// Serialization of sweep tables and reports. CSV numbers use 12 significant
// digits; columns are stable and documented in docs/output.md.

#include <ostream>
#include <string>
#include <vector>

#include "qeplas/config.hpp"
#include "qeplas/models.hpp"
#include "qeplas/plasmonics.hpp"
#include "qeplas/sweep.hpp"

namespace qeplas {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& name);

/// 12-significant-digit rendering shared by every writer.
std::string format_number(double value);

std::vector<std::string> sweep_header(const SweepTable& table);
void write_sweep(const SweepTable& table, std::ostream& os, OutputFormat format);

std::vector<std::string> phase_header();
void write_phases(const std::vector<PhaseRow>& rows, std::ostream& os, OutputFormat format);

/// Derived constants: every mode, xi, and the effective parameters at the
/// config's drive template (evaluated at the sweep start).
void write_params(const RunConfig& config, std::ostream& os, OutputFormat format);

void write_convergence(const ConvergenceReport& report, std::ostream& os, OutputFormat format);

void write_comparison(const ComparisonReport& report, std::ostream& os, OutputFormat format);

/// Matplotlib script plotting a CSV produced by write_sweep / write_phases.
std::string plot_script(const std::string& csv_path, const std::vector<std::string>& header,
                        const std::string& title);

}  // namespace qeplas
