#include <doctest.h>

#include <sstream>
#include <string>

#include "qeplas/config.hpp"
#include "qeplas/errors.hpp"
#include "qeplas/output.hpp"

using namespace qeplas;

namespace {

const char* kMinimal = R"({
  "name": "t",
  "material": {"eps_inf": 4.6, "omega_p": 9000, "gamma_d": 100},
  "geometry": {"r_m": 7, "R": 12, "eps_b": 1, "orientation": "radial"},
  "emitter": {"mu": 0.5, "gamma_21": 0.05, "gamma_32": 0.05, "omega_21": 3351.8},
  "drive": {"Omega_s_mu": 0.005, "Omega_c": 0.2, "Delta_c": 0},
  "sweep": {"axis": "signal_frequency", "start": 3340, "stop": 3360, "points": 5},
  "models": [{"tier": "effective", "N": 4}, {"tier": "analytic", "N": 4}]
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.name == "t");
  CHECK(c.models.size() == 2);
  CHECK(c.models[0].label == "effective_N4");
  CHECK(c.models[0].cutoff == 3);
  CHECK(c.max_modes() == 4);
  CHECK(c.alpha_denominator == AlphaDenominator::AsPrinted);
  CHECK(c.sweep.values().size() == 5);
  CHECK(c.sweep.values().back() == 3360.0);
  CHECK(c.convergence.n_tolerance == 1e-3);
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_AS(parse_config(with(kMinimal, "\"name\"", "\"nmae\"")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(kMinimal, "\"gamma_d\"", "\"gamma\"")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(kMinimal, "\"N\": 4}", "\"N\": 4, \"extra\": 1}")), ConfigError);
  try {
    parse_config(with(kMinimal, "\"Delta_c\": 0", "\"Delta_c\": 0, \"detuning\": 1"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("detuning") != std::string::npos);
  }
}

TEST_CASE("invalid values are rejected") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(with(kMinimal, "\"points\": 5", "\"points\": 1")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(kMinimal, "\"radial\"", "\"diagonal\"")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(kMinimal, "\"effective\"", "\"exactish\"")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(kMinimal, "\"N\": 4}", "\"N\": 4, \"cutoff\": 2}")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(kMinimal, "\"omega_21\": 3351.8",
                                    "\"omega_21\": 3351.8, \"omega_21_minus_omega_1\": -150")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(with(kMinimal, "\"signal_frequency\"", "\"control_rabi\"")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(kMinimal, "\"analytic\", \"N\": 4", "\"effective\", \"N\": 4")),
                  ConfigError);
}

TEST_CASE("emitter frequency relative to the dipole mode") {
  const RunConfig c = parse_config(
      with(kMinimal, "\"omega_21\": 3351.8", "\"omega_21_minus_omega_1\": -150"));
  CHECK(c.emitter.omega_21 == doctest::Approx(3351.8177).epsilon(1e-8));
}

TEST_CASE("control sweeps take the signal as a detuning") {
  std::string text = with(kMinimal, "\"signal_frequency\", \"start\": 3340, \"stop\": 3360",
                          "\"control_rabi\", \"start\": 0, \"stop\": 5");
  text = with(text, "\"Omega_s_mu\"", "\"Delta_s\": -2, \"Omega_s_mu\"");
  const RunConfig c = parse_config(text);
  CHECK(c.sweep.axis == SweepAxis::ControlRabi);
  CHECK(c.drive.omega_s == doctest::Approx(3353.8));
}

TEST_CASE("built-in presets load") {
  const auto names = preset_names();
  REQUIRE(names.size() == 6);
  for (const auto& n : names) {
    CAPTURE(n);
    const RunConfig c = load_preset(n);
    CHECK(c.name == n);
    CHECK_FALSE(c.models.empty());
  }
  CHECK_THROWS_AS(load_preset("fig9"), ConfigError);
  CHECK(load_preset("fig2c").drive.Omega_c == 1.5);
}

TEST_CASE("sweep CSV header is stable") {
  const RunConfig c = load_preset("fig2a");
  SweepTable t;
  t.axis = c.sweep.axis;
  t.tiers = c.models;
  std::ostringstream os;
  write_sweep(t, os, OutputFormat::Csv);
  CHECK(os.str() ==
        "omega_s_meV,exact_N2_I,exact_N2_g2,exact_N2_status,effective_N10_I,effective_N10_g2,"
        "effective_N10_status,analytic_N10_I,analytic_N10_g2,analytic_N10_status\n");
}

TEST_CASE("numbers carry twelve significant digits") {
  CHECK(format_number(3501.81770981234) == "3501.81770981");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(parse_format("json") == OutputFormat::Json);
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}
