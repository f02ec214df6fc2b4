#include "qeplas/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "embedded_presets.hpp"
#include "qeplas/errors.hpp"

namespace qeplas {

namespace {

using nlohmann::json;

class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail("must be an object");
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, value] : node_.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        fail("unknown key '" + key + "'");
      }
    }
  }

  bool has(std::string_view key) const { return node_.contains(std::string(key)); }

  const json& at(std::string_view key) const {
    auto it = node_.find(std::string(key));
    if (it == node_.end()) fail("missing key '" + std::string(key) + "'");
    return *it;
  }

  Section child(std::string_view key) const { return {at(key), path_ + "." + std::string(key)}; }

  double number(std::string_view key) const {
    const json& v = at(key);
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) {
      return std::numeric_limits<double>::infinity();
    }
    if (!v.is_number()) fail("'" + std::string(key) + "' must be a number");
    return v.get<double>();
  }

  double number_or(std::string_view key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) fail("'" + std::string(key) + "' must be an integer");
    return v.get<int>();
  }

  int integer_or(std::string_view key, int fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  std::string string(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_string()) fail("'" + std::string(key) + "' must be a string");
    return v.get<std::string>();
  }

  std::string string_or(std::string_view key, std::string fallback) const {
    return has(key) ? string(key) : fallback;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config " + path_ + ": " + msg);
  }

 private:
  const json& node_;
  std::string path_;
};

DrudeParams parse_material(const Section& s) {
  s.allow_only({"eps_inf", "omega_p", "gamma_d"});
  return {s.number("eps_inf"), s.number("omega_p"), s.number("gamma_d")};
}

GeometryParams parse_geometry(const Section& s) {
  s.allow_only({"r_m", "R", "eps_b", "orientation"});
  GeometryParams g{s.number("r_m"), s.number("R"), s.number_or("eps_b", 1.0),
                   Orientation::Radial};
  const std::string orient = s.string_or("orientation", "radial");
  if (orient == "radial") {
    g.orientation = Orientation::Radial;
  } else if (orient == "tangential") {
    g.orientation = Orientation::Tangential;
  } else {
    s.fail("orientation must be 'radial' or 'tangential'");
  }
  return g;
}

EmitterParams parse_emitter(const Section& s, const DrudeParams& material,
                            const GeometryParams& geometry) {
  s.allow_only({"mu", "gamma_21", "gamma_32", "omega_21", "omega_21_minus_omega_1", "omega_32"});
  EmitterParams em;
  em.mu = s.number("mu");
  em.gamma_21 = s.number("gamma_21");
  em.gamma_32 = s.number("gamma_32");
  em.omega_32 = s.number_or("omega_32", 0.0);
  const bool absolute = s.has("omega_21");
  const bool relative = s.has("omega_21_minus_omega_1");
  if (absolute == relative) s.fail("give exactly one of omega_21, omega_21_minus_omega_1");
  if (absolute) {
    em.omega_21 = s.number("omega_21");
  } else {
    try {
      em.omega_21 = mode_frequency(1, material, geometry.eps_b) + s.number("omega_21_minus_omega_1");
    } catch (const DomainError& e) {
      s.fail(e.what());
    }
  }
  return em;
}

DriveParams parse_drive(const Section& s, const EmitterParams& em, bool& has_signal) {
  s.allow_only({"omega_s", "Delta_s", "Omega_s_mu", "Omega_c", "Delta_c"});
  DriveParams d;
  d.Omega_s_mu = s.number("Omega_s_mu");
  d.Omega_c = s.number_or("Omega_c", 0.0);
  d.Delta_c = s.number_or("Delta_c", 0.0);
  if (s.has("omega_s") && s.has("Delta_s")) s.fail("give at most one of omega_s, Delta_s");
  has_signal = true;
  if (s.has("omega_s")) {
    d.omega_s = s.number("omega_s");
  } else if (s.has("Delta_s")) {
    d.omega_s = em.omega_21 - s.number("Delta_s");
  } else {
    has_signal = false;
  }
  return d;
}

SweepGrid parse_sweep(const Section& s) {
  s.allow_only({"axis", "start", "stop", "points"});
  SweepGrid g;
  const std::string axis = s.string("axis");
  if (axis == "signal_frequency") {
    g.axis = SweepAxis::SignalFrequency;
  } else if (axis == "control_rabi") {
    g.axis = SweepAxis::ControlRabi;
  } else {
    s.fail("axis must be 'signal_frequency' or 'control_rabi'");
  }
  g.start = s.number("start");
  g.stop = s.number("stop");
  g.points = s.integer("points");
  return g;
}

TierSpec parse_tier(const Section& s) {
  s.allow_only({"tier", "N", "cutoff", "stride", "label"});
  TierSpec t;
  const std::string tier = s.string("tier");
  if (tier == "exact") {
    t.tier = Tier::Exact;
  } else if (tier == "effective") {
    t.tier = Tier::Effective;
  } else if (tier == "analytic") {
    t.tier = Tier::Analytic;
  } else {
    s.fail("tier must be 'exact', 'effective' or 'analytic'");
  }
  t.N = s.integer("N");
  t.cutoff = s.integer_or("cutoff", 3);
  t.stride = s.integer_or("stride", 1);
  t.label = s.string_or("label", tier_name(t.tier) + "_N" + std::to_string(t.N));
  return t;
}

ConvergenceSettings parse_convergence(const Section& s) {
  s.allow_only({"n_tolerance", "cutoff_tolerance", "probe_points", "max_N", "max_cutoff"});
  ConvergenceSettings c;
  c.n_tolerance = s.number_or("n_tolerance", c.n_tolerance);
  c.cutoff_tolerance = s.number_or("cutoff_tolerance", c.cutoff_tolerance);
  c.probe_points = s.integer_or("probe_points", c.probe_points);
  c.max_N = s.integer_or("max_N", c.max_N);
  c.max_cutoff = s.integer_or("max_cutoff", c.max_cutoff);
  return c;
}

}  // namespace

std::vector<double> SweepGrid::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(points, 0)));
  for (int i = 0; i < points; ++i) {
    v[static_cast<std::size_t>(i)] =
        i == points - 1 ? stop : start + (stop - start) * i / (points - 1);
  }
  return v;
}

int RunConfig::max_modes() const {
  int n = 1;
  for (const TierSpec& t : models) n = std::max(n, t.N);
  return n;
}

void RunConfig::validate() const {
  try {
    material.validate();
    geometry.validate();
    emitter.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (sweep.points < 2) throw ConfigError("config sweep: points must be >= 2");
  if (!(sweep.start < sweep.stop)) throw ConfigError("config sweep: start must be < stop");
  if (!(drive.Omega_s_mu >= 0.0)) throw ConfigError("config drive: Omega_s_mu must be >= 0");
  if (!(convergence.n_tolerance > 0.0) || !(convergence.cutoff_tolerance > 0.0)) {
    throw ConfigError("config convergence: tolerances must be > 0");
  }
  if (convergence.probe_points < 1) throw ConfigError("config convergence: probe_points must be >= 1");
  std::set<std::string> labels;
  for (const TierSpec& t : models) {
    if (t.N < 1) throw ConfigError("config models: N must be >= 1");
    if (t.cutoff < 3 && t.tier != Tier::Analytic) {
      throw ConfigError("config models: cutoff must be >= 3 for two-excitation physics");
    }
    if (t.stride < 1) throw ConfigError("config models: stride must be >= 1");
    if (!labels.insert(t.label).second) {
      throw ConfigError("config models: duplicate label '" + t.label + "'");
    }
  }
}

std::string tier_name(Tier tier) {
  switch (tier) {
    case Tier::Exact: return "exact";
    case Tier::Effective: return "effective";
    case Tier::Analytic: return "analytic";
  }
  return "unknown";
}

std::string axis_name(SweepAxis axis) {
  return axis == SweepAxis::SignalFrequency ? "signal_frequency" : "control_rabi";
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const Section top(root, "$");
  top.allow_only({"name", "material", "geometry", "emitter", "drive", "sweep", "models",
                  "convergence", "alpha_denominator", "output"});

  RunConfig cfg;
  cfg.name = top.string_or("name", "run");
  cfg.material = parse_material(top.child("material"));
  cfg.geometry = parse_geometry(top.child("geometry"));
  cfg.emitter = parse_emitter(top.child("emitter"), cfg.material, cfg.geometry);
  bool has_signal = false;
  cfg.drive = parse_drive(top.child("drive"), cfg.emitter, has_signal);
  cfg.sweep = parse_sweep(top.child("sweep"));
  if (cfg.sweep.axis == SweepAxis::ControlRabi && !has_signal) {
    throw ConfigError("config $.drive: control_rabi sweeps need omega_s or Delta_s");
  }

  const json& models = top.at("models");
  if (!models.is_array() || models.empty()) {
    throw ConfigError("config $.models: must be a non-empty array");
  }
  for (std::size_t i = 0; i < models.size(); ++i) {
    cfg.models.push_back(parse_tier(Section(models[i], "$.models[" + std::to_string(i) + "]")));
  }
  if (top.has("convergence")) cfg.convergence = parse_convergence(top.child("convergence"));

  const std::string denom = top.string_or("alpha_denominator", "as_printed");
  if (denom == "as_printed") {
    cfg.alpha_denominator = AlphaDenominator::AsPrinted;
  } else if (denom == "sum_of_rates") {
    cfg.alpha_denominator = AlphaDenominator::SumOfRates;
  } else {
    top.fail("alpha_denominator must be 'as_printed' or 'sum_of_rates'");
  }
  cfg.output = top.string_or("output", "");
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : detail::embedded_presets()) names.emplace_back(p.name);
  return names;
}

std::string preset_text(std::string_view name) {
  for (const auto& p : detail::embedded_presets()) {
    if (p.name == name) return std::string(p.text);
  }
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

RunConfig load_preset(std::string_view name) { return parse_config(preset_text(name)); }

}  // namespace qeplas
