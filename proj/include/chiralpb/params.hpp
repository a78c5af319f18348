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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace chiralpb {

/// The two counter-propagating whispering-gallery modes.
enum class Mode { Cw, Ccw };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view text);
inline Mode other(Mode mode) { return mode == Mode::Cw ? Mode::Ccw : Mode::Cw; }

/// Experimental knobs in SI units. The resonator always spins CCW; the sign of
/// the Sagnac-Fizeau shift per mode follows from that.
struct PhysicalParams {
  double wavelength = 0.0;        // m
  double quality_factor = 0.0;
  double mode_volume = 0.0;       // m^3
  double refractive_index = 0.0;  // n1
  double nonlinear_index = 0.0;   // n2, m^2/W
  double dispersion = 0.0;        // dn1/dlambda, 1/m
  double input_power = 0.0;       // W
  double radius = 0.0;            // m
  double angular_velocity = 0.0;  // rad/s
  double detuning = 0.0;          // rad/s, omega_c - omega_l
  double backscattering = 0.0;    // J, rad/s
  Mode drive = Mode::Cw;

  bool operator==(const PhysicalParams&) const = default;
};

/// Model rates in rad/s. `sagnac` is the shift applied with + sign to the CW
/// mode and - sign to the CCW mode.
struct DerivedParams {
  double omega_c = 0.0;
  double gamma = 0.0;
  double chi = 0.0;
  double xi = 0.0;
  double sagnac = 0.0;
  double detuning = 0.0;
  double backscattering = 0.0;
  Mode drive = Mode::Cw;

  bool operator==(const DerivedParams&) const = default;
};

/// Every violated invariant of `p`, one message each. Empty when valid.
std::vector<std::string> violations(const PhysicalParams& p);

/// Throws InvalidParams listing all violations.
void validate(const PhysicalParams& p);

/// Sagnac-Fizeau shift magnitude for the given parameters (rad/s).
double sagnac_shift(const PhysicalParams& p);

DerivedParams derive(const PhysicalParams& p);

/// Rates that replace the derived ones after `derive`. Used by the CLI
/// overrides and by sweeps along the xi/chi axes.
struct RateOverrides {
  std::optional<double> xi;              // rad/s
  std::optional<double> chi;             // rad/s
  std::optional<double> chi_over_gamma;  // applied after `chi`

  bool empty() const { return !xi && !chi && !chi_over_gamma; }
};

DerivedParams apply(DerivedParams d, const RateOverrides& o);

/// Checks gamma > 0, chi >= 0, xi >= 0 and finiteness.
void validate(const DerivedParams& d);

/// Stable 64-bit FNV-1a digest of the bit patterns of every field, rendered
/// as 16 hex digits. Identical inputs give identical hashes across runs.
std::string params_hash(const DerivedParams& d, int cutoff_cw = 0, int cutoff_ccw = 0);

// Presets -----------------------------------------------------------------

/// Microresonator parameters of the chiral blockade study with J = 2 gamma,
/// no rotation and zero detuning.
PhysicalParams default_preset();

/// Detuning of the rotation-driven blockade switch curve, as found by
/// `calibrate_switch_detuning`.
inline constexpr double kSwitchDetuning = -2.105e6;

std::optional<PhysicalParams> preset_by_name(std::string_view name);

// Config I/O (flat JSON object, SI units) ----------------------------------

nlohmann::json to_json(const PhysicalParams& p);
nlohmann::json to_json(const DerivedParams& d);

/// Overlays the keys of `j` on `base`. Unknown keys and non-numeric values
/// are reported together with any invariant violation.
PhysicalParams params_from_json(const nlohmann::json& j, PhysicalParams base = {});

PhysicalParams load_params(const std::string& path, PhysicalParams base = {});

}  // namespace chiralpb
