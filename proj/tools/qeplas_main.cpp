// qeplas: command-line front end for the emitter-nanoparticle photon
// statistics library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "qeplas/config.hpp"
#include "qeplas/errors.hpp"
#include "qeplas/output.hpp"
#include "qeplas/sweep.hpp"

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string preset;
  std::string out;
  std::string format = "csv";
  int threads = 1;
  bool plot_script = false;
};

qeplas::RunConfig resolve_config(const GlobalOptions& g) {
  if (!g.config_path.empty() && !g.preset.empty()) {
    throw qeplas::ConfigError("give either --config or --preset, not both");
  }
  if (!g.config_path.empty()) return qeplas::load_config(g.config_path);
  if (!g.preset.empty()) return qeplas::load_preset(g.preset);
  throw qeplas::ConfigError("one of --config or --preset is required");
}

// Output goes to --out, else the config's output path, else stdout. "-" forces stdout.
class Sink {
 public:
  Sink(const GlobalOptions& g, const qeplas::RunConfig& cfg, bool use_config_output) {
    path_ = !g.out.empty() ? g.out : (use_config_output ? cfg.output : std::string());
    if (path_ == "-") path_.clear();
    if (!path_.empty()) {
      file_ = std::make_unique<std::ofstream>(path_);
      if (!*file_) throw qeplas::ConfigError("cannot open output file " + path_);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
};

void maybe_plot(const GlobalOptions& g, const Sink& sink, const std::vector<std::string>& header,
                const std::string& title) {
  if (!g.plot_script) return;
  if (sink.path().empty() || g.format != "csv") {
    std::cerr << "note: --plot-script needs a CSV file output; skipped\n";
    return;
  }
  const std::string script = sink.path() + ".py";
  std::ofstream(script) << qeplas::plot_script(sink.path(), header, title);
  std::cerr << "wrote plot script " << script << '\n';
}

void report_failures(const qeplas::SweepTable& table) {
  const std::size_t failed = table.failed_points();
  if (failed) std::cerr << "warning: " << failed << " tier evaluations failed (see status columns)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon statistics of a driven three-level emitter next to a metal nanoparticle"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "Run configuration (JSON)");
  app.add_option("--preset", g.preset, "Built-in preset: fig2a fig2b fig2c fig3a fig3b fig4");
  app.add_option("--out", g.out, "Output path ('-' for stdout; default: config output)");
  app.add_option("--threads", g.threads, "Worker threads for sweep points")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--plot-script", g.plot_script, "Also write a matplotlib script next to the CSV");

  auto* params = app.add_subcommand("params", "Print derived plasmonic and effective constants");
  auto* spectrum = app.add_subcommand("spectrum", "I and g2(0) versus signal frequency");
  auto* control = app.add_subcommand("control-sweep", "g2(0) versus control Rabi frequency");
  auto* phases = app.add_subcommand("phases", "Phases of the weak-drive amplitudes");
  auto* converge = app.add_subcommand("converge", "Mode-count and Fock-cutoff convergence study");
  auto* compare = app.add_subcommand("compare", "Pairwise deviations between model tiers");
  app.add_subcommand("presets", "List built-in presets");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("presets")) {
      for (const auto& name : qeplas::preset_names()) std::cout << name << '\n';
      return 0;
    }
    const qeplas::RunConfig cfg = resolve_config(g);
    const qeplas::OutputFormat format = qeplas::parse_format(g.format);
    qeplas::ExecOptions exec;
    exec.threads = g.threads;

    if (params->parsed()) {
      Sink sink(g, cfg, false);
      qeplas::write_params(cfg, sink.stream(), format);
    } else if (spectrum->parsed() || control->parsed()) {
      const auto table = spectrum->parsed() ? qeplas::run_spectrum(cfg, exec)
                                            : qeplas::run_control_sweep(cfg, exec);
      Sink sink(g, cfg, true);
      qeplas::write_sweep(table, sink.stream(), format);
      report_failures(table);
      maybe_plot(g, sink, qeplas::sweep_header(table), cfg.name);
    } else if (phases->parsed()) {
      const auto rows = qeplas::run_phase_sweep(cfg, exec);
      Sink sink(g, cfg, true);
      qeplas::write_phases(rows, sink.stream(), format);
      maybe_plot(g, sink, qeplas::phase_header(), cfg.name + " phases");
    } else if (converge->parsed()) {
      const auto report = qeplas::converge(cfg, exec);
      Sink sink(g, cfg, false);
      qeplas::write_convergence(report, sink.stream(), format);
      std::cerr << "converged: N=" << report.N << " cutoff=" << report.cutoff << '\n';
    } else if (compare->parsed()) {
      const auto report = qeplas::compare_models(cfg, exec);
      Sink sink(g, cfg, false);
      qeplas::write_comparison(report, sink.stream(), format);
      if (!report.notice.empty()) std::cerr << "notice: " << report.notice << '\n';
      for (const auto& p : report.pairs) {
        if (p.has_threshold && !p.pass) return 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
