// Copyright 2026 The chiralpb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chiralpb/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chiralpb/analytic.hpp"
#include "chiralpb/errors.hpp"
#include "chiralpb/figures.hpp"
#include "chiralpb/model.hpp"
#include "chiralpb/observables.hpp"
#include "chiralpb/params.hpp"
#include "chiralpb/steadystate.hpp"
#include "chiralpb/sweep.hpp"

namespace chiralpb::cli {

namespace {

constexpr const char* kOutDirEnv = "CHIRALPB_OUT_DIR";

struct Options {
  std::string preset;
  std::string config;
  std::string out_dir;
  std::string units = "rad/s";
  std::string format = "both";
  unsigned workers = 1;
  std::optional<int> cutoff;
  double tolerance = 0.1;
  std::optional<double> omega, delta0, J, xi, chi, chi_over_gamma;
  std::vector<std::string> figures;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--preset", o.preset, "Named parameter set (paper)");
  cmd->add_option("--out", o.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or .)");
  cmd->add_option("--units", o.units, "Unit of --delta0, --J, --xi, --chi: rad/s or MHz (1e6 rad/s)")
      ->check(CLI::IsMember({"rad/s", "MHz"}));
  cmd->add_option("--omega", o.omega, "Angular velocity of the resonator, rad/s");
  cmd->add_option("--delta0", o.delta0, "Laser detuning omega_c - omega_l");
  cmd->add_option("--J", o.J, "Backscattering coupling");
  cmd->add_option("--xi", o.xi, "Drive amplitude (replaces the derived value)");
  cmd->add_option("--chi", o.chi, "Kerr rate (replaces the derived value)");
  cmd->add_option("--chi-over-gamma", o.chi_over_gamma, "Kerr rate in units of gamma");
}

void add_solver(CLI::App* cmd, Options& o) {
  cmd->add_option("--cutoff", o.cutoff, "Photon-number cutoff per mode")->check(CLI::Range(1, 64));
}

void add_sweep(CLI::App* cmd, Options& o) {
  cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--format", o.format, "Output format: csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
}

double unit(const Options& o) { return o.units == "MHz" ? 1e6 : 1.0; }

std::string label(const Options& o) {
  if (!o.preset.empty()) return o.preset;
  if (!o.config.empty()) return std::filesystem::path(o.config).stem().string();
  return "custom";
}

std::filesystem::path out_dir(const Options& o) {
  std::filesystem::path dir = ".";
  if (!o.out_dir.empty())
    dir = o.out_dir;
  else if (const char* env = std::getenv(kOutDirEnv); env && *env)
    dir = env;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

PhysicalParams physical(const Options& o) {
  PhysicalParams p;
  if (!o.preset.empty()) {
    auto preset = preset_by_name(o.preset);
    if (!preset) throw InvalidParams("unknown preset '" + o.preset + "' (available: paper)");
    p = *preset;
  }
  if (!o.config.empty()) p = load_params(o.config, p);
  if (o.preset.empty() && o.config.empty()) throw InvalidParams("one of --preset or --config is required");
  const double u = unit(o);
  if (o.omega) p.angular_velocity = *o.omega;
  if (o.delta0) p.detuning = *o.delta0 * u;
  if (o.J) p.backscattering = *o.J * u;
  validate(p);
  return p;
}

RateOverrides overrides(const Options& o) {
  RateOverrides r;
  const double u = unit(o);
  if (o.xi) r.xi = *o.xi * u;
  if (o.chi) r.chi = *o.chi * u;
  r.chi_over_gamma = o.chi_over_gamma;
  return r;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("write to " + path.string() + " failed");
}

void write_result(const SweepResult& r, const Options& o, const std::string& stem, std::ostream& out) {
  const auto dir = out_dir(o);
  if (o.format != "json") {
    const auto path = dir / (stem + ".csv");
    export_result(r, ExportFormat::Csv, path.string());
    out << "wrote " << path.string() << "\n";
  }
  if (o.format != "csv") {
    const auto path = dir / (stem + ".json");
    export_result(r, ExportFormat::Json, path.string());
    out << "wrote " << path.string() << "\n";
  }
}

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

std::string context(const DerivedParams& d, double omega) {
  std::ostringstream s;
  s.precision(6);
  s << " (delta0=" << d.detuning << " omega=" << omega << " J=" << d.backscattering << " xi=" << d.xi
    << " chi=" << d.chi << " rad/s)";
  return s.str();
}

int derive_params(const Options& o, std::ostream& out) {
  const PhysicalParams p = physical(o);
  const DerivedParams d = apply(derive(p), overrides(o));
  nlohmann::json j;
  j["physical"] = to_json(p);
  j["derived"] = to_json(d);
  j["params_hash"] = params_hash(d);
  const std::string text = j.dump(2) + "\n";
  write_file(out_dir(o) / (label(o) + "_derive-params.json"), text);
  out << text;
  return kOk;
}

int solve(const Options& o, std::ostream& out) {
  const PhysicalParams p = physical(o);
  const DerivedParams d = apply(derive(p), overrides(o));
  const int cutoff = o.cutoff.value_or(kDefaultCutoff);
  const FockSpace space = build_space(cutoff, cutoff);
  CorrelationResult numeric;
  StateDiagnostics diag;
  double residual = 0.0;
  try {
    SteadyOptions opt;
    opt.rate_unit = d.gamma;
    const auto L = liouvillian(d, space);
    DensityMatrix state = solve_steady(L, space, opt);
    state.params_hash = params_hash(d, cutoff, cutoff);
    numeric = correlations(state, d);
    diag = diagnose(state);
    residual = relative_residual(L, state);
  } catch (const SolverNotConverged& e) {
    throw SolverNotConverged(e.what() + context(d, p.angular_velocity), e.residual());
  } catch (const DegenerateSteadyState& e) {
    throw DegenerateSteadyState(e.what() + context(d, p.angular_velocity));
  }

  nlohmann::json j;
  j["physical"] = to_json(p);
  j["derived"] = to_json(d);
  j["cutoff"] = cutoff;
  j["params_hash"] = params_hash(d, cutoff, cutoff);
  j["diagnostics"] = {{"hermiticity", diag.hermiticity},
                      {"trace_error", diag.trace_error},
                      {"min_eigenvalue", diag.min_eigenvalue},
                      {"relative_residual", residual}};
  for (Mode mode : {Mode::Cw, Mode::Ccw}) {
    const auto& s = numeric[mode];
    nlohmann::json m;
    m["N"] = s.mean_photon;
    m["S"] = optional_json(s.excitation);
    m["g2"] = optional_json(s.g2);
    m["g3"] = optional_json(s.g3);
    m["regime"] = std::string(to_string(s.regime));
    m["P"] = s.distribution.probability;
    m["Poisson"] = s.distribution.poisson;
    auto attempt = [](auto&& f) -> nlohmann::json {
      try {
        return f();
      } catch (const Error&) {
        return nullptr;
      }
    };
    m["g2_analytic"] = attempt([&] { return g2_closed_form(d, mode); });
    m["g3_analytic"] = attempt([&] { return g3_analytic(d, mode); });
    j[std::string(to_string(mode) == "CW" ? "cw" : "ccw")] = m;
  }
  const std::string text = j.dump(2) + "\n";
  write_file(out_dir(o) / (label(o) + "_solve.json"), text);
  out << text;
  return kOk;
}

int sweep(Options o, std::ostream& out) {
  if (o.config.empty()) throw InvalidParams("sweep requires --config PATH (sweep spec)");
  SweepSpec spec = load_sweep_spec(o.config);
  if (!o.preset.empty()) throw InvalidParams("sweep takes its parameters from the spec file; drop --preset");
  const RateOverrides r = overrides(o);
  if (r.xi) spec.overrides.xi = r.xi;
  if (r.chi) spec.overrides.chi = r.chi;
  if (r.chi_over_gamma) spec.overrides.chi_over_gamma = r.chi_over_gamma;
  spec.cutoff = o.cutoff.value_or(spec.cutoff);
  const SweepResult result = run(spec, o.workers);
  o.preset = spec.name;
  write_result(result, o, spec.name + "_sweep", out);
  return kOk;
}

int validate_cmd(const Options& o, std::ostream& out) {
  PhysicalParams base = physical(o);
  SweepSpec spec;
  spec.name = label(o);
  spec.base = base;
  spec.overrides = overrides(o);
  spec.cutoff = o.cutoff.value_or(kDefaultCutoff);
  spec.oracle = Oracle::Both;
  spec.observables = {Observable::MeanPhoton, Observable::G2, Observable::G3};
  if (o.omega) {
    spec.axes = {{Axis::Detuning, -kDetuningSpan, kDetuningSpan, kDetuningPoints}};
  } else {
    spec.base.angular_velocity = 0.0;
    spec.axes = {{Axis::AngularVelocity, 0.0, kPresetSpins.back(), 2},
                 {Axis::Detuning, -kDetuningSpan, kDetuningSpan, kDetuningPoints}};
  }
  const SweepResult result = run(spec, o.workers);

  double worst = 0.0;
  std::size_t compared = 0;
  nlohmann::json worst_point = nullptr;
  nlohmann::json per_mode = nlohmann::json::object();
  for (Mode mode : {Mode::Cw, Mode::Ccw}) {
    double mode_worst = 0.0;
    for (const auto& r : result.records) {
      const auto num = value_of(r, Quantity::G2, mode);
      const auto ana = value_of(r, Quantity::G2Analytic, mode);
      if (!num || !ana) continue;
      ++compared;
      const double dev = std::abs(*ana - *num) / std::abs(*num);
      mode_worst = std::max(mode_worst, dev);
      if (worst_point.is_null() || dev > worst) {
        worst = dev;
        worst_point = {{"mode", std::string(to_string(mode))}, {"delta0", r.point.delta0},
                       {"omega", r.point.omega}, {"g2", *num}, {"g2_analytic", *ana}, {"deviation", dev}};
      }
    }
    per_mode[std::string(to_string(mode))] = mode_worst;
  }
  const bool pass = compared > 0 && worst <= o.tolerance;
  nlohmann::json j;
  j["quantity"] = "g2";
  j["tolerance"] = o.tolerance;
  j["points_compared"] = compared;
  j["max_relative_deviation"] = worst;
  j["max_relative_deviation_by_mode"] = per_mode;
  j["worst_point"] = worst_point;
  j["pass"] = pass;
  const std::string text = j.dump(2) + "\n";
  Options csv_only = o;
  csv_only.format = "csv";
  write_result(result, csv_only, label(o) + "_validate", out);
  write_file(out_dir(o) / (label(o) + "_validate.json"), text);
  out << text;
  return pass ? kOk : kValidationFailed;
}

int figure_data_cmd(const Options& o, std::ostream& out) {
  PhysicalParams base = o.preset.empty() && o.config.empty() ? default_preset() : physical(o);
  std::vector<std::string> names = o.figures;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = figure_names();
  for (const auto& name : names) figure_specs(name, base, o.cutoff.value_or(kDefaultCutoff));
  for (const auto& name : names) {
    const SweepResult r = figure_data(name, base, o.workers, o.cutoff.value_or(kDefaultCutoff), overrides(o));
    write_result(r, o, name + "_figure-data", out);
  }
  return kOk;
}

int exit_code(const std::string& category) {
  if (category == "config") return kConfig;
  if (category == "io") return kIo;
  if (category == "solver" || category == "degenerate") return kSolver;
  if (category == "undefined") return kUndefined;
  if (category == "dimension") return kDimension;
  return kInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-mode Kerr resonator with Sagnac shift: steady states, correlations and sweeps", "chiralpb"};
  app.require_subcommand(1);
  Options o;

  auto* derive_cmd = app.add_subcommand("derive-params", "Print the model rates derived from physical parameters");
  add_common(derive_cmd, o);
  derive_cmd->add_option("--config", o.config, "Parameter file (flat JSON, SI units)")->check(CLI::ExistingFile);

  auto* solve_cmd = app.add_subcommand("solve", "Steady state and correlations at one parameter point");
  add_common(solve_cmd, o);
  add_solver(solve_cmd, o);
  solve_cmd->add_option("--config", o.config, "Parameter file (flat JSON, SI units)")->check(CLI::ExistingFile);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a sweep spec file");
  add_common(sweep_cmd, o);
  add_solver(sweep_cmd, o);
  add_sweep(sweep_cmd, o);
  sweep_cmd->add_option("--config", o.config, "Sweep spec (JSON)")->check(CLI::ExistingFile);

  auto* validate_sub = app.add_subcommand("validate", "Compare analytic and master-equation g2 over a detuning scan");
  add_common(validate_sub, o);
  add_solver(validate_sub, o);
  add_sweep(validate_sub, o);
  validate_sub->add_option("--config", o.config, "Parameter file (flat JSON, SI units)")->check(CLI::ExistingFile);
  validate_sub->add_option("--tolerance", o.tolerance, "Largest accepted relative deviation");

  auto* figure_cmd = app.add_subcommand("figure-data", "Emit the data files of the named figure presets");
  add_common(figure_cmd, o);
  add_solver(figure_cmd, o);
  add_sweep(figure_cmd, o);
  figure_cmd->add_option("--config", o.config, "Parameter file (flat JSON, SI units)")->check(CLI::ExistingFile);
  figure_cmd->add_option("figures", o.figures, "fig1b, fig2a, fig2b, fig2c, fig3a, fig3b, fig3c, fig3d, fig3e or all");

  std::vector<std::string> argv_store = {"chiralpb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (derive_cmd->parsed()) return derive_params(o, out);
    if (solve_cmd->parsed()) return solve(o, out);
    if (sweep_cmd->parsed()) return sweep(o, out);
    if (validate_sub->parsed()) return validate_cmd(o, out);
    if (figure_cmd->parsed()) return figure_data_cmd(o, out);
  } catch (const Error& e) {
    std::string msg = e.what();
    for (char& c : msg)
      if (c == '\n') c = ' ';
    err << "error[" << e.category() << "]: " << msg << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace chiralpb::cli
