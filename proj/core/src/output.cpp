#include "qeplas/output.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>

#include "qeplas/analytic.hpp"
#include "qeplas/errors.hpp"

namespace qeplas {

namespace {

using nlohmann::ordered_json;

// A row is a list of already-rendered cells; empty cells mean "not evaluated".
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

// Numeric-looking cells become JSON numbers, empty cells null, the rest strings.
ordered_json cell_json(const std::string& cell) {
  if (cell.empty()) return nullptr;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end && *end == '\0' && std::isfinite(v)) return v;
  return cell;
}

void write_json_table(const Table& t, std::ostream& os) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.header[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  os << rows.dump(2) << '\n';
}

void emit(const Table& t, std::ostream& os, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    write_csv(t, os);
  } else {
    write_json_table(t, os);
  }
}

std::string axis_column(SweepAxis axis) {
  return axis == SweepAxis::SignalFrequency ? "omega_s_meV" : "Omega_c_meV";
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format '" + name + "' (csv|json)");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  std::ostringstream os;
  os << std::setprecision(12) << value;
  return os.str();
}

std::vector<std::string> sweep_header(const SweepTable& table) {
  std::vector<std::string> header{axis_column(table.axis)};
  for (const TierSpec& t : table.tiers) {
    header.push_back(t.label + "_I");
    header.push_back(t.label + "_g2");
    header.push_back(t.label + "_status");
  }
  return header;
}

void write_sweep(const SweepTable& table, std::ostream& os, OutputFormat format) {
  Table t{sweep_header(table), {}};
  for (const SweepRow& row : table.rows) {
    std::vector<std::string> cells{format_number(row.axis_value)};
    for (const TierResult& r : row.tiers) {
      cells.push_back(r.ok() ? format_number(r.intensity) : "");
      cells.push_back(r.ok() ? format_number(r.g2) : "");
      cells.push_back(status_name(r.status));
    }
    t.rows.push_back(std::move(cells));
  }
  emit(t, os, format);
}

std::vector<std::string> phase_header() {
  return {"omega_s_meV", "phi1_1", "phi1_2", "dphi1", "phi2_1", "phi2_2", "dphi2", "status"};
}

void write_phases(const std::vector<PhaseRow>& rows, std::ostream& os, OutputFormat format) {
  Table t{phase_header(), {}};
  for (const PhaseRow& r : rows) {
    const bool ok = r.status == PointStatus::Ok;
    auto num = [ok](double v) { return ok ? format_number(v) : std::string(); };
    t.rows.push_back({format_number(r.omega_s), num(r.phi1_1), num(r.phi1_2), num(r.dphi1),
                      num(r.phi2_1), num(r.phi2_2), num(r.dphi2), status_name(r.status)});
  }
  emit(t, os, format);
}

void write_params(const RunConfig& config, std::ostream& os, OutputFormat format) {
  const PlasmonSpectrum spectrum = spectrum_for(config);
  const DriveParams drive = drive_at(config, config.sweep.start);
  const EffectiveParams effp = effective_params(spectrum, config.emitter, drive,
                                                config.max_modes(), config.alpha_denominator);

  Table t{{"quantity", "n", "value", "unit"}, {}};
  auto add = [&t](std::string q, std::string n, double v, std::string unit) {
    t.rows.push_back({std::move(q), std::move(n), format_number(v), std::move(unit)});
  };
  for (const PlasmonMode& m : spectrum.modes) {
    const std::string n = std::to_string(m.n);
    add("omega_n", n, m.omega, "meV");
    add("eta_n", n, m.eta, "meV");
    add("kappa_n", n, m.kappa, "meV");
    add("g_n", n, m.g, "meV");
  }
  add("xi", "", spectrum.xi, "");
  add("chi", "", spectrum.xi * config.emitter.mu, "e*nm");
  add("omega_21", "", config.emitter.omega_21, "meV");
  for (std::size_t k = 0; k < effp.alpha.size(); ++k) {
    add("alpha_n", std::to_string(k + 2), effp.alpha[k], "");
  }
  add("Delta_s_eff", "", effp.Delta_s_eff, "meV");
  add("Delta_c_eff", "", effp.Delta_c_eff, "meV");
  add("gamma_21_eff", "", effp.gamma_21_eff, "meV");
  add("omega_21_eff", "", effp.omega_21_eff, "meV");
  const DressedEnergies dressed = dressed_energies(effp, drive);
  const DressedEnergies blockade = blockade_frequencies_dressed(effp, spectrum.dipole_mode(), drive);
  add("omega_plus_1", "", dressed.plus, "meV");
  add("omega_minus_1", "", dressed.minus, "meV");
  add("omega_0_2", "", blockade_frequency(effp, spectrum.dipole_mode()), "meV");
  add("omega_plus_2", "", blockade.plus, "meV");
  add("omega_minus_2", "", blockade.minus, "meV");
  emit(t, os, format);
}

void write_convergence(const ConvergenceReport& report, std::ostream& os, OutputFormat format) {
  if (format == OutputFormat::Json) {
    ordered_json j;
    j["N"] = report.N;
    j["cutoff"] = report.cutoff;
    j["probe_meV"] = report.probe;
    j["steps"] = ordered_json::array();
    for (const ConvergenceStep& s : report.steps) {
      j["steps"].push_back({{"stage", s.stage},
                            {"value", s.value},
                            {"max_rel_change_I", s.change_intensity},
                            {"max_rel_change_g2", s.change_g2}});
    }
    os << j.dump(2) << '\n';
    return;
  }
  Table t{{"stage", "value", "max_rel_change_I", "max_rel_change_g2", "accepted"}, {}};
  for (const ConvergenceStep& s : report.steps) {
    const bool accepted = (s.stage == "N" && s.value == report.N) ||
                          (s.stage == "cutoff" && s.value == report.cutoff);
    t.rows.push_back({s.stage, std::to_string(s.value), format_number(s.change_intensity),
                      format_number(s.change_g2), accepted ? "yes" : "no"});
  }
  write_csv(t, os);
}

void write_comparison(const ComparisonReport& report, std::ostream& os, OutputFormat format) {
  if (format == OutputFormat::Json) {
    ordered_json j;
    j["notice"] = report.notice;
    j["pairs"] = ordered_json::array();
    for (const PairComparison& p : report.pairs) {
      ordered_json pj{{"tier", p.tier},
                      {"reference", p.reference},
                      {"points", p.points},
                      {"max_g2_deviation", p.max_g2},
                      {"median_g2_deviation", p.median_g2},
                      {"max_I_deviation", p.max_intensity},
                      {"median_I_deviation", p.median_intensity}};
      if (p.has_threshold) {
        pj["max_g2_threshold"] = p.max_g2_threshold;
        pj["median_g2_threshold"] = p.median_g2_threshold;
        pj["pass"] = p.pass;
      }
      j["pairs"].push_back(std::move(pj));
    }
    os << j.dump(2) << '\n';
    return;
  }
  Table t{{"tier", "reference", "points", "max_g2_dev", "median_g2_dev", "max_I_dev",
           "median_I_dev", "max_g2_threshold", "median_g2_threshold", "verdict"},
          {}};
  for (const PairComparison& p : report.pairs) {
    t.rows.push_back({p.tier, p.reference, std::to_string(p.points), format_number(p.max_g2),
                      format_number(p.median_g2), format_number(p.max_intensity),
                      format_number(p.median_intensity),
                      p.has_threshold ? format_number(p.max_g2_threshold) : "",
                      p.has_threshold ? format_number(p.median_g2_threshold) : "",
                      p.has_threshold ? (p.pass ? "pass" : "fail") : "n/a"});
  }
  write_csv(t, os);
}

std::string plot_script(const std::string& csv_path, const std::vector<std::string>& header,
                        const std::string& title) {
  std::ostringstream py;
  py << "# Generated by qeplas. Plots " << csv_path << ".\n"
     << "import csv\nimport math\nimport matplotlib.pyplot as plt\n\n"
     << "with open(" << std::quoted(csv_path) << ") as f:\n"
     << "    rows = list(csv.DictReader(f))\n\n"
     << "def column(name):\n"
     << "    return [float(r[name]) if r[name] not in ('', 'nan') else math.nan for r in rows]\n\n"
     << "x = column(" << std::quoted(header.front()) << ")\n";
  std::vector<std::string> intensity;
  std::vector<std::string> other;
  for (std::size_t i = 1; i < header.size(); ++i) {
    const std::string& h = header[i];
    if (h.ends_with("_status") || h == "status") continue;
    (h.ends_with("_I") ? intensity : other).push_back(h);
  }
  const int panels = intensity.empty() ? 1 : 2;
  py << "fig, axes = plt.subplots(" << panels << ", 1, sharex=True, squeeze=False)\n";
  int panel = 0;
  if (!intensity.empty()) {
    for (const auto& h : intensity) {
      py << "col = column(" << std::quoted(h) << ")\n"
         << "peak = max(v for v in col if not math.isnan(v))\n"
         << "axes[0][0].plot(x, [v / peak for v in col], label=" << std::quoted(h) << ")\n";
    }
    py << "axes[0][0].set_ylabel('I / max I')\naxes[0][0].legend()\n";
    panel = 1;
  }
  for (const auto& h : other) {
    py << "axes[" << panel << "][0].plot(x, column(" << std::quoted(h) << "), label="
       << std::quoted(h) << ")\n";
  }
  py << "axes[" << panel << "][0].legend()\n"
     << "axes[" << panel << "][0].set_xlabel(" << std::quoted(header.front()) << ")\n"
     << "fig.suptitle(" << std::quoted(title) << ")\n"
     << "fig.savefig(" << std::quoted(csv_path + ".png") << ", dpi=150)\n";
  return py.str();
}

}  // namespace qeplas
