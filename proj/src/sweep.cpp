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

#include "chiralpb/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <variant>

#include "chiralpb/analytic.hpp"
#include "chiralpb/errors.hpp"
#include "chiralpb/model.hpp"
#include "chiralpb/steadystate.hpp"

namespace chiralpb {

namespace {

constexpr std::array<Axis, 5> kAxes = {Axis::Detuning, Axis::AngularVelocity, Axis::Backscattering, Axis::Drive,
                                       Axis::Kerr};
constexpr std::array<Observable, 5> kObservables = {Observable::MeanPhoton, Observable::Excitation, Observable::G2,
                                                    Observable::G3, Observable::Distribution};

bool wants(const std::vector<Observable>& list, Observable o) {
  return std::find(list.begin(), list.end(), o) != list.end();
}

std::string mode_prefix(Mode mode) { return mode == Mode::Cw ? "cw" : "ccw"; }

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::Detuning: return "delta0";
    case Axis::AngularVelocity: return "omega";
    case Axis::Backscattering: return "J";
    case Axis::Drive: return "xi";
    case Axis::Kerr: return "chi";
  }
  return "?";
}

Axis axis_from_string(std::string_view name) {
  for (Axis a : kAxes)
    if (to_string(a) == name) return a;
  throw InvalidParams("unknown sweep axis '" + std::string(name) + "' (expected delta0, omega, J, xi or chi)");
}

std::vector<double> AxisSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = i == count - 1 ? max : min + (max - min) * double(i) / double(count - 1);
  return out;
}

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::MeanPhoton: return "N";
    case Observable::Excitation: return "S";
    case Observable::G2: return "g2";
    case Observable::G3: return "g3";
    case Observable::Distribution: return "P";
  }
  return "?";
}

Observable observable_from_string(std::string_view name) {
  for (Observable o : kObservables)
    if (to_string(o) == name) return o;
  throw InvalidParams("unknown observable '" + std::string(name) + "' (expected N, S, g2, g3 or P)");
}

std::vector<Observable> all_observables() { return {kObservables.begin(), kObservables.end()}; }

std::string_view to_string(Oracle o) {
  switch (o) {
    case Oracle::Numeric: return "numeric";
    case Oracle::Analytic: return "analytic";
    case Oracle::Both: return "both";
  }
  return "?";
}

Oracle oracle_from_string(std::string_view name) {
  for (Oracle o : {Oracle::Numeric, Oracle::Analytic, Oracle::Both})
    if (to_string(o) == name) return o;
  throw InvalidParams("unknown oracle '" + std::string(name) + "' (expected numeric, analytic or both)");
}

void validate(const SweepSpec& spec) {
  std::string problems;
  if (spec.axes.empty()) problems += " [sweep needs at least one axis]";
  if (spec.axes.size() > 2) problems += " [at most two axes per sweep]";
  for (std::size_t i = 0; i < spec.axes.size(); ++i) {
    const auto& a = spec.axes[i];
    const std::string name(to_string(a.axis));
    if (a.count < 2) problems += " [axis " + name + " needs at least 2 points]";
    if (!std::isfinite(a.min) || !std::isfinite(a.max)) problems += " [axis " + name + " bounds must be finite]";
    for (std::size_t k = 0; k < i; ++k)
      if (spec.axes[k].axis == a.axis) problems += " [axis " + name + " listed twice]";
  }
  if (spec.cutoff < 1) problems += " [cutoff must be >= 1]";
  if (spec.observables.empty()) problems += " [observable list is empty]";
  for (const auto& v : violations(spec.base)) problems += " [" + v + "]";
  if (!problems.empty()) throw InvalidParams("invalid sweep spec:" + problems);
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidParams("sweep config must be a JSON object");
  SweepSpec spec;
  PhysicalParams base;
  if (j.contains("preset")) {
    const auto name = j.at("preset").get<std::string>();
    auto p = preset_by_name(name);
    if (!p) throw InvalidParams("unknown preset '" + name + "'");
    base = *p;
  }
  if (j.contains("params")) base = params_from_json(j.at("params"), base);
  spec.base = base;
  auto number = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_number()) throw InvalidParams(std::string(key) + " must be a number");
    return j.at(key).get<double>();
  };
  spec.overrides.xi = number("xi");
  spec.overrides.chi = number("chi");
  spec.overrides.chi_over_gamma = number("chi_over_gamma");
  if (j.contains("name")) spec.name = j.at("name").get<std::string>();
  if (j.contains("cutoff")) spec.cutoff = j.at("cutoff").get<int>();
  if (j.contains("axes")) {
    for (const auto& a : j.at("axes")) {
      AxisSpec axis;
      axis.axis = axis_from_string(a.at("name").get<std::string>());
      axis.min = a.at("min").get<double>();
      axis.max = a.at("max").get<double>();
      axis.count = a.at("count").get<int>();
      spec.axes.push_back(axis);
    }
  }
  if (j.contains("observables")) {
    spec.observables.clear();
    for (const auto& o : j.at("observables")) spec.observables.push_back(observable_from_string(o.get<std::string>()));
  }
  if (j.contains("oracle")) spec.oracle = oracle_from_string(j.at("oracle").get<std::string>());
  for (const auto& [key, value] : j.items()) {
    static const std::array<const char*, 10> known = {"preset", "params",      "xi",   "chi",         "chi_over_gamma",
                                                      "name",   "cutoff",      "axes", "observables", "oracle"};
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end())
      throw InvalidParams("unknown sweep config key '" + key + "'");
  }
  validate(spec);
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sweep config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams("sweep config " + path + " is not valid JSON: " + e.what());
  }
  return sweep_spec_from_json(j);
}

void SweepResult::append(const SweepResult& other) {
  if (!records.empty() && !other.records.empty() && cutoff != other.cutoff)
    throw DimensionMismatch("cannot concatenate sweeps with different cutoffs");
  if (records.empty()) {
    cutoff = other.cutoff;
    observables = other.observables;
  }
  records.insert(records.end(), other.records.begin(), other.records.end());
}

SweepRecord evaluate_point(const DerivedParams& d, int cutoff, Oracle oracle, double omega) {
  SweepRecord r;
  r.point = {d.detuning, omega, d.backscattering, d.xi, d.chi};
  r.params_hash = params_hash(d, cutoff, cutoff);
  std::vector<std::string> flags;
  if (oracle != Oracle::Analytic) {
    try {
      const FockSpace space = build_space(cutoff, cutoff);
      SteadyOptions opt;
      opt.rate_unit = d.gamma;
      DensityMatrix state = solve_steady(liouvillian(d, space), space, opt);
      state.params_hash = r.params_hash;
      r.numeric = correlations(state, d);
      for (Mode mode : {Mode::Cw, Mode::Ccw}) {
        const auto& s = (*r.numeric)[mode];
        const std::string p = mode_prefix(mode);
        if (!s.excitation) flags.push_back("S_" + p + "_undefined");
        if (!s.g2) flags.push_back("g2_" + p + "_undefined");
        if (!s.g3) flags.push_back("g3_" + p + "_undefined");
      }
    } catch (const Error& e) {
      flags.push_back("numeric_failed[" + e.category() + "]");
    }
  }
  if (oracle != Oracle::Numeric) {
    for (Mode mode : {Mode::Cw, Mode::Ccw}) {
      auto& a = r.analytic[mode == Mode::Cw ? 0 : 1];
      const std::string p = mode_prefix(mode);
      try {
        a.g2 = g2_closed_form(d, mode);
      } catch (const Error& e) {
        flags.push_back("g2_analytic_" + p + "_" + e.category());
      }
      try {
        a.g3 = g3_analytic(d, mode);
      } catch (const Error& e) {
        flags.push_back("g3_analytic_" + p + "_" + e.category());
      }
    }
  }
  for (std::size_t i = 0; i < flags.size(); ++i) r.flags += (i ? ";" : "") + flags[i];
  return r;
}

DerivedParams point_params(const SweepSpec& spec, const std::vector<std::pair<Axis, double>>& coords) {
  PhysicalParams p = spec.base;
  for (const auto& [axis, value] : coords) {
    if (axis == Axis::Detuning) p.detuning = value;
    if (axis == Axis::AngularVelocity) p.angular_velocity = value;
    if (axis == Axis::Backscattering) p.backscattering = value;
  }
  validate(p);
  RateOverrides o = spec.overrides;
  for (const auto& [axis, value] : coords) {
    if (axis == Axis::Drive) o.xi = value;
    if (axis == Axis::Kerr) {
      o.chi = value;
      o.chi_over_gamma.reset();
    }
  }
  DerivedParams d = apply(derive(p), o);
  validate(d);
  return d;
}

namespace {

void mask(SweepRecord& r, const std::vector<Observable>& observables) {
  for (Mode mode : {Mode::Cw, Mode::Ccw}) {
    if (!r.numeric) break;
    auto& s = (*r.numeric)[mode];
    if (!wants(observables, Observable::MeanPhoton)) s.mean_photon = 0.0;
    if (!wants(observables, Observable::Excitation)) s.excitation.reset();
    if (!wants(observables, Observable::G2)) s.g2.reset();
    if (!wants(observables, Observable::G3)) s.g3.reset();
    if (!wants(observables, Observable::Distribution)) s.distribution = {};
  }
  for (auto& a : r.analytic) {
    if (!wants(observables, Observable::G2)) a.g2.reset();
    if (!wants(observables, Observable::G3)) a.g3.reset();
  }
}

}  // namespace

SweepResult run(const SweepSpec& spec, unsigned workers) {
  validate(spec);
  std::vector<std::vector<double>> values;
  std::size_t total = 1;
  for (const auto& a : spec.axes) {
    values.push_back(a.values());
    total *= values.back().size();
  }
  SweepResult result;
  result.name = spec.name;
  result.cutoff = spec.cutoff;
  result.observables = spec.observables;
  result.records.resize(total);

  auto solve_index = [&](std::size_t index) {
    std::vector<std::pair<Axis, double>> coords(spec.axes.size());
    std::size_t rest = index;
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
      const std::size_t n = values[k].size();
      coords[k] = {spec.axes[k].axis, values[k][rest % n]};
      rest /= n;
    }
    PhysicalParams p = spec.base;
    for (const auto& [axis, value] : coords)
      if (axis == Axis::AngularVelocity) p.angular_velocity = value;
    SweepRecord r;
    try {
      r = evaluate_point(point_params(spec, coords), spec.cutoff, spec.oracle, p.angular_velocity);
    } catch (const Error& e) {
      r = SweepRecord{};
      r.point.omega = p.angular_velocity;
      for (const auto& [axis, value] : coords) {
        if (axis == Axis::Detuning) r.point.delta0 = value;
        if (axis == Axis::Backscattering) r.point.J = value;
        if (axis == Axis::Drive) r.point.xi = value;
        if (axis == Axis::Kerr) r.point.chi = value;
      }
      r.flags = "point_failed[" + e.category() + "]";
    }
    mask(r, spec.observables);
    result.records[index] = std::move(r);
  };

  const std::size_t pool = std::min<std::size_t>(std::max(workers, 1u), total);
  if (pool <= 1) {
    for (std::size_t i = 0; i < total; ++i) solve_index(i);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (std::size_t t = 0; t < pool; ++t)
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < total; i = next++) solve_index(i);
    });
  for (auto& t : threads) t.join();
  return result;
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::N: return "N";
    case Quantity::S: return "S";
    case Quantity::G2: return "g2";
    case Quantity::G3: return "g3";
    case Quantity::G2Analytic: return "g2_analytic";
    case Quantity::G3Analytic: return "g3_analytic";
  }
  return "?";
}

Quantity quantity_from_string(std::string_view name) {
  for (Quantity q : {Quantity::N, Quantity::S, Quantity::G2, Quantity::G3, Quantity::G2Analytic, Quantity::G3Analytic})
    if (to_string(q) == name) return q;
  throw InvalidParams("unknown quantity '" + std::string(name) + "'");
}

std::optional<double> value_of(const SweepRecord& record, Quantity q, Mode mode) {
  if (q == Quantity::G2Analytic) return record.analytic_for(mode).g2;
  if (q == Quantity::G3Analytic) return record.analytic_for(mode).g3;
  if (!record.numeric) return std::nullopt;
  const auto& s = (*record.numeric)[mode];
  switch (q) {
    case Quantity::N: return s.mean_photon;
    case Quantity::S: return s.excitation;
    case Quantity::G2: return s.g2;
    case Quantity::G3: return s.g3;
    default: return std::nullopt;
  }
}

ExtremumResult find_extremum(const SweepResult& result, Quantity q, Mode mode, Extremum kind) {
  std::optional<ExtremumResult> best;
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& r = result.records[i];
    const auto v = value_of(r, q, mode);
    if (!v || std::isnan(*v)) continue;
    bool take = !best;
    if (best) {
      const bool better = kind == Extremum::Min ? *v < best->value : *v > best->value;
      const bool tie = *v == best->value;
      take = better || (tie && (r.point.delta0 < best->point.delta0 ||
                                (r.point.delta0 == best->point.delta0 && r.point.omega < best->point.omega)));
    }
    if (take) best = ExtremumResult{i, r.point, *v};
  }
  if (!best)
    throw UndefinedCorrelation(std::string(to_string(q)) + "_" + mode_prefix(mode) + " is undefined at every grid point");
  return *best;
}

// Tabular export -----------------------------------------------------------------

namespace {

using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

Cell cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

bool has_analytic(const SweepResult& result) {
  return std::any_of(result.records.begin(), result.records.end(), [](const SweepRecord& r) {
    return r.analytic[0].g2 || r.analytic[0].g3 || r.analytic[1].g2 || r.analytic[1].g3;
  });
}

Table tabulate(const SweepResult& result) {
  Table t;
  const auto& obs = result.observables;
  t.columns = {"delta0", "omega", "J", "xi", "chi", "params_hash"};
  for (Mode mode : {Mode::Cw, Mode::Ccw}) {
    const std::string p = mode_prefix(mode) + "_";
    if (wants(obs, Observable::MeanPhoton)) t.columns.push_back(p + "N");
    if (wants(obs, Observable::Excitation)) t.columns.push_back(p + "S");
    if (wants(obs, Observable::G2)) t.columns.push_back(p + "g2");
    if (wants(obs, Observable::G3)) t.columns.push_back(p + "g3");
    t.columns.push_back(p + "regime");
    if (wants(obs, Observable::G2)) t.columns.push_back(p + "g2_analytic");
    if (wants(obs, Observable::G3)) t.columns.push_back(p + "g3_analytic");
    if (wants(obs, Observable::Distribution)) {
      for (int k = 0; k <= result.cutoff; ++k) t.columns.push_back(p + "P" + std::to_string(k));
      for (int k = 0; k <= result.cutoff; ++k) t.columns.push_back(p + "Poisson" + std::to_string(k));
    }
  }
  t.columns.push_back("flags");

  for (const auto& r : result.records) {
    std::vector<Cell> row = {r.point.delta0, r.point.omega, r.point.J, r.point.xi, r.point.chi, r.params_hash};
    for (Mode mode : {Mode::Cw, Mode::Ccw}) {
      const ModeStatistics* s = r.numeric ? &(*r.numeric)[mode] : nullptr;
      const auto& a = r.analytic_for(mode);
      if (wants(obs, Observable::MeanPhoton)) row.push_back(s ? Cell(s->mean_photon) : Cell());
      if (wants(obs, Observable::Excitation)) row.push_back(s ? cell(s->excitation) : Cell());
      if (wants(obs, Observable::G2)) row.push_back(s ? cell(s->g2) : Cell());
      if (wants(obs, Observable::G3)) row.push_back(s ? cell(s->g3) : Cell());
      row.push_back(s ? Cell(std::string(to_string(s->regime))) : Cell());
      if (wants(obs, Observable::G2)) row.push_back(cell(a.g2));
      if (wants(obs, Observable::G3)) row.push_back(cell(a.g3));
      if (wants(obs, Observable::Distribution)) {
        for (int k = 0; k <= result.cutoff; ++k) {
          const auto& pk = s ? s->distribution.probability : std::vector<double>{};
          row.push_back(std::size_t(k) < pk.size() ? Cell(pk[std::size_t(k)]) : Cell());
        }
        for (int k = 0; k <= result.cutoff; ++k) {
          const auto& pk = s ? s->distribution.poisson : std::vector<double>{};
          row.push_back(std::size_t(k) < pk.size() ? Cell(pk[std::size_t(k)]) : Cell());
        }
      }
    }
    row.push_back(r.flags);
    t.rows.push_back(std::move(row));
  }
  return t;
}

SweepResult untabulate(const Table& t) {
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < t.columns.size(); ++i) col[t.columns[i]] = i;
  for (const char* required : {"delta0", "omega", "J", "xi", "chi", "params_hash", "cw_regime", "ccw_regime", "flags"})
    if (!col.count(required)) throw IoError(std::string("sweep table lacks column '") + required + "'");

  SweepResult result;
  result.observables.clear();
  if (col.count("cw_N")) result.observables.push_back(Observable::MeanPhoton);
  if (col.count("cw_S")) result.observables.push_back(Observable::Excitation);
  if (col.count("cw_g2")) result.observables.push_back(Observable::G2);
  if (col.count("cw_g3")) result.observables.push_back(Observable::G3);
  int levels = 0;
  while (col.count("cw_P" + std::to_string(levels))) ++levels;
  if (levels > 0) {
    result.observables.push_back(Observable::Distribution);
    result.cutoff = levels - 1;
  }

  for (const auto& row : t.rows) {
    auto get = [&](const std::string& name) -> const Cell& {
      static const Cell empty;
      auto it = col.find(name);
      return it == col.end() ? empty : row.at(it->second);
    };
    auto number = [&](const std::string& name) -> std::optional<double> {
      const Cell& c = get(name);
      if (std::holds_alternative<double>(c)) return std::get<double>(c);
      return std::nullopt;
    };
    auto text = [&](const std::string& name) -> std::string {
      const Cell& c = get(name);
      return std::holds_alternative<std::string>(c) ? std::get<std::string>(c) : std::string();
    };
    SweepRecord r;
    r.point = {number("delta0").value_or(0.0), number("omega").value_or(0.0), number("J").value_or(0.0),
               number("xi").value_or(0.0), number("chi").value_or(0.0)};
    r.params_hash = text("params_hash");
    r.flags = text("flags");
    if (!text("cw_regime").empty()) {
      CorrelationResult numeric;
      for (Mode mode : {Mode::Cw, Mode::Ccw}) {
        const std::string p = mode_prefix(mode) + "_";
        auto& s = numeric[mode];
        s.mean_photon = number(p + "N").value_or(0.0);
        s.excitation = number(p + "S");
        s.g2 = number(p + "g2");
        s.g3 = number(p + "g3");
        s.regime = regime_from_string(text(p + "regime"));
        for (int k = 0; k < levels; ++k) {
          const auto pk = number(p + "P" + std::to_string(k));
          const auto qk = number(p + "Poisson" + std::to_string(k));
          if (!pk || !qk) break;
          s.distribution.probability.push_back(*pk);
          s.distribution.poisson.push_back(*qk);
        }
        for (std::size_t k = 0; k < s.distribution.probability.size(); ++k)
          s.distribution.mean += double(k) * s.distribution.probability[k];
      }
      r.numeric = numeric;
    }
    for (Mode mode : {Mode::Cw, Mode::Ccw}) {
      const std::string p = mode_prefix(mode) + "_";
      auto& a = r.analytic[mode == Mode::Cw ? 0 : 1];
      a.g2 = number(p + "g2_analytic");
      a.g3 = number(p + "g3_analytic");
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_text(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
  return s;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool is_text_column(const std::string& name) {
  return name == "params_hash" || name == "flags" || (name.size() > 7 && name.substr(name.size() - 7) == "_regime");
}

}  // namespace

std::string to_csv(const SweepResult& result) {
  const Table t = tabulate(result);
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (std::holds_alternative<double>(row[i]))
        out += format_number(std::get<double>(row[i]));
      else if (std::holds_alternative<std::string>(row[i]))
        out += csv_text(std::get<std::string>(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string to_json_text(const SweepResult& result) {
  const Table t = tabulate(result);
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = result.name;
  j["cutoff"] = result.cutoff;
  j["analytic"] = has_analytic(result);
  j["columns"] = t.columns;
  nlohmann::json observables = nlohmann::json::array();
  for (Observable o : result.observables) observables.push_back(std::string(to_string(o)));
  j["observables"] = observables;
  nlohmann::json records = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json rec = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (std::holds_alternative<double>(row[i]))
        rec[t.columns[i]] = std::get<double>(row[i]);
      else if (std::holds_alternative<std::string>(row[i]))
        rec[t.columns[i]] = std::get<std::string>(row[i]);
      else
        rec[t.columns[i]] = nullptr;
    }
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  return j.dump(1) + "\n";
}

SweepResult parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty sweep CSV");
  Table t;
  t.columns = split_line(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != t.columns.size())
      throw IoError("sweep CSV line " + std::to_string(lineno) + " has " + std::to_string(fields.size()) +
                    " fields, expected " + std::to_string(t.columns.size()));
    std::vector<Cell> row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].empty()) {
        row.emplace_back();
      } else if (is_text_column(t.columns[i])) {
        row.emplace_back(fields[i]);
      } else {
        char* end = nullptr;
        const double v = std::strtod(fields[i].c_str(), &end);
        if (end == fields[i].c_str() || *end != '\0')
          throw IoError("sweep CSV line " + std::to_string(lineno) + ": '" + fields[i] + "' is not a number");
        row.emplace_back(v);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return untabulate(t);
}

SweepResult parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("sweep JSON does not parse: ") + e.what());
  }
  if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion)
    throw IoError("unsupported sweep JSON schema version");
  Table t;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& rec : j.at("records")) {
    std::vector<Cell> row;
    for (const auto& c : t.columns) {
      const auto& v = rec.at(c);
      if (v.is_null())
        row.emplace_back();
      else if (v.is_string())
        row.emplace_back(v.get<std::string>());
      else
        row.emplace_back(v.get<double>());
    }
    t.rows.push_back(std::move(row));
  }
  SweepResult result = untabulate(t);
  result.name = j.value("name", std::string());
  result.cutoff = j.value("cutoff", result.cutoff);
  if (j.contains("observables")) {
    result.observables.clear();
    for (const auto& o : j.at("observables")) result.observables.push_back(observable_from_string(o.get<std::string>()));
  }
  return result;
}

void export_result(const SweepResult& result, ExportFormat format, const std::string& path) {
  const std::string text = format == ExportFormat::Csv ? to_csv(result) : to_json_text(result);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write to " + path + " failed");
}

SweepResult import_result(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  try {
    return json ? parse_json(text) : parse_csv(text);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

// Calibration ----------------------------------------------------------------------

namespace {

double mismatch(const SweepRecord& r, double t2, double t3) {
  if (!r.numeric || !r.numeric->cw.g2 || !r.numeric->cw.g3) return std::numeric_limits<double>::infinity();
  const double g2 = *r.numeric->cw.g2, g3 = *r.numeric->cw.g3;
  if (!(g2 > 0.0) || !(g3 > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(std::abs(std::log(g2 / t2)), std::abs(std::log(g3 / t3)));
}

}  // namespace

CalibrationResult calibrate_switch_detuning(const PhysicalParams& base, double target_g2, double target_g3,
                                            double tolerance, int cutoff, unsigned workers) {
  if (!(target_g2 > 0.0) || !(target_g3 > 0.0)) throw InvalidParams("calibration targets must be positive");
  SweepSpec coarse;
  coarse.name = "calibration";
  coarse.base = base;
  coarse.cutoff = cutoff;
  coarse.axes = {{Axis::Detuning, -kDetuningSpan, kDetuningSpan, kDetuningPoints}};
  coarse.observables = {Observable::G2, Observable::G3};
  coarse.oracle = Oracle::Numeric;
  const SweepResult scan = run(coarse, workers);

  const auto& rec = scan.records;
  std::vector<std::pair<double, std::size_t>> minima;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const double f = mismatch(rec[i], target_g2, target_g3);
    if (!std::isfinite(f)) continue;
    const bool left = i == 0 || f <= mismatch(rec[i - 1], target_g2, target_g3);
    const bool right = i + 1 == rec.size() || f <= mismatch(rec[i + 1], target_g2, target_g3);
    if (left && right) minima.emplace_back(f, i);
  }
  if (minima.empty()) throw SolverNotConverged("calibration scan found no defined (g2, g3) point", 0.0);
  std::stable_sort(minima.begin(), minima.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  if (minima.size() > 3) minima.resize(3);

  const double step = 2.0 * kDetuningSpan / double(kDetuningPoints - 1);
  std::optional<std::pair<double, SweepRecord>> best;
  for (const auto& [f, i] : minima) {
    SweepSpec fine = coarse;
    const double center = rec[i].point.delta0;
    fine.axes = {{Axis::Detuning, center - step, center + step, 2 * static_cast<int>(std::lround(step / 1e3)) + 1}};
    for (const auto& r : run(fine, workers).records) {
      const double m = mismatch(r, target_g2, target_g3);
      if (!best || m < best->first) best = std::make_pair(m, r);
    }
  }
  CalibrationResult out;
  const SweepRecord& r = best->second;
  out.delta0 = r.point.delta0;
  out.g2 = *r.numeric->cw.g2;
  out.g3 = *r.numeric->cw.g3;
  out.g2_error = std::abs(out.g2 / target_g2 - 1.0);
  out.g3_error = std::abs(out.g3 / target_g3 - 1.0);
  out.within_tolerance = out.g2_error <= tolerance && out.g3_error <= tolerance;
  return out;
}

}  // namespace chiralpb
