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

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chiralpb/fock.hpp"
#include "chiralpb/observables.hpp"
#include "chiralpb/params.hpp"

namespace chiralpb {

/// Parameters a sweep axis may scan. All values in rad/s (omega: angular
/// velocity in rad/s). xi and chi replace the derived rates.
enum class Axis { Detuning, AngularVelocity, Backscattering, Drive, Kerr };

std::string_view to_string(Axis axis);  // "delta0", "omega", "J", "xi", "chi"
Axis axis_from_string(std::string_view name);

struct AxisSpec {
  Axis axis = Axis::Detuning;
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  /// Linearly spaced, endpoints included exactly.
  std::vector<double> values() const;
};

/// Observable groups written to exports.
enum class Observable { MeanPhoton, Excitation, G2, G3, Distribution };
std::string_view to_string(Observable o);  // "N", "S", "g2", "g3", "P"
Observable observable_from_string(std::string_view name);
std::vector<Observable> all_observables();

enum class Oracle { Numeric, Analytic, Both };
std::string_view to_string(Oracle o);
Oracle oracle_from_string(std::string_view name);

/// Default grids used by the figure presets.
inline constexpr double kDetuningSpan = 6e6;
inline constexpr int kDetuningPoints = 241;
inline constexpr int kMapPoints = 61;
inline constexpr int kDefaultCutoff = 4;

struct SweepSpec {
  std::string name = "custom";
  PhysicalParams base;
  RateOverrides overrides;
  int cutoff = kDefaultCutoff;
  std::vector<AxisSpec> axes;
  std::vector<Observable> observables = all_observables();
  Oracle oracle = Oracle::Both;
};

/// Throws InvalidParams: 1 or 2 distinct axes, >= 2 points each, cutoff >= 1,
/// valid base parameters.
void validate(const SweepSpec& spec);

/// Sweep spec from a JSON config: {"preset": "paper", "params": {...},
/// "xi": .., "chi": .., "chi_over_gamma": .., "cutoff": 4,
/// "axes": [{"name": "delta0", "min": .., "max": .., "count": ..}],
/// "observables": ["N", ...], "oracle": "both"}.
SweepSpec sweep_spec_from_json(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::string& path);

/// Effective values at one grid point.
struct GridPoint {
  double delta0 = 0.0;
  double omega = 0.0;
  double J = 0.0;
  double xi = 0.0;
  double chi = 0.0;

  bool operator==(const GridPoint&) const = default;
};

struct AnalyticValues {
  std::optional<double> g2;
  std::optional<double> g3;

  bool operator==(const AnalyticValues&) const = default;
};

struct SweepRecord {
  GridPoint point;
  std::string params_hash;
  std::optional<CorrelationResult> numeric;  // empty when not requested or failed
  std::array<AnalyticValues, 2> analytic{};  // [0] CW, [1] CCW
  std::string flags;                         // ';'-separated markers, empty when clean

  const AnalyticValues& analytic_for(Mode mode) const { return analytic[mode == Mode::Cw ? 0 : 1]; }
  bool operator==(const SweepRecord&) const = default;
};

struct SweepResult {
  std::string name;
  int cutoff = kDefaultCutoff;
  std::vector<Observable> observables = all_observables();
  std::vector<SweepRecord> records;

  void append(const SweepResult& other);
};

/// Solves one parameter point: steady state plus observables (numeric) and
/// the weak-drive formulas (analytic). Failures land in `flags`.
SweepRecord evaluate_point(const DerivedParams& d, int cutoff, Oracle oracle, double omega = 0.0);

/// Parameters at one grid point of `spec`.
DerivedParams point_params(const SweepSpec& spec, const std::vector<std::pair<Axis, double>>& coords);

/// Runs every grid point on `workers` threads (>= 1). Records are ordered
/// with the first axis outermost regardless of completion order.
SweepResult run(const SweepSpec& spec, unsigned workers = 1);

enum class Quantity { N, S, G2, G3, G2Analytic, G3Analytic };
std::string_view to_string(Quantity q);
Quantity quantity_from_string(std::string_view name);

std::optional<double> value_of(const SweepRecord& record, Quantity q, Mode mode);

enum class Extremum { Min, Max };

struct ExtremumResult {
  std::size_t index = 0;
  GridPoint point;
  double value = 0.0;
};

/// Extremum over records where the quantity is defined. Ties go to the
/// smaller delta0, then the smaller omega, then the earlier record.
ExtremumResult find_extremum(const SweepResult& result, Quantity q, Mode mode, Extremum kind);

enum class ExportFormat { Csv, Json };

/// Writes `result` to `path`. Column layout: delta0, omega, J, xi, chi,
/// params_hash, per mode (cw_, ccw_) N, S, g2, g3, regime, g2_analytic,
/// g3_analytic, P0..Pc, Poisson0..Poissonc (groups filtered by the observable
/// list), then flags. Numbers use 17 significant digits in CSV.
void export_result(const SweepResult& result, ExportFormat format, const std::string& path);
std::string to_csv(const SweepResult& result);
std::string to_json_text(const SweepResult& result);

SweepResult import_result(const std::string& path);
SweepResult parse_csv(const std::string& text);
SweepResult parse_json(const std::string& text);

inline constexpr int kSchemaVersion = 1;

// Switch-curve calibration -----------------------------------------------------

struct CalibrationResult {
  double delta0 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
  double g2_error = 0.0;  // relative to target
  double g3_error = 0.0;
  bool within_tolerance = false;
};

/// Scans delta0 at the base parameters (the caller sets omega) for the point
/// whose CW (g2, g3) best matches the targets in the max-log-ratio sense:
/// a coarse default grid, then a 1e3 rad/s refinement around the best minima.
CalibrationResult calibrate_switch_detuning(const PhysicalParams& base, double target_g2, double target_g3,
                                            double tolerance = 0.2, int cutoff = kDefaultCutoff,
                                            unsigned workers = 1);

}  // namespace chiralpb
