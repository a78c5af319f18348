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

#include "chiralpb/params.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chiralpb/constants.hpp"
#include "chiralpb/errors.hpp"

namespace chiralpb {

std::string_view to_string(Mode mode) { return mode == Mode::Cw ? "CW" : "CCW"; }

Mode mode_from_string(std::string_view text) {
  if (text == "CW" || text == "cw") return Mode::Cw;
  if (text == "CCW" || text == "ccw") return Mode::Ccw;
  throw InvalidParams("drive_direction must be CW or CCW, got '" + std::string(text) + "'");
}

namespace {

double sagnac_factor(const PhysicalParams& p) {
  const double n1 = p.refractive_index;
  return 1.0 - 1.0 / (n1 * n1) - (p.wavelength / n1) * p.dispersion;
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value))
    throw InvalidParams(std::string("derived ") + name + " is not finite");
}

}  // namespace

std::vector<std::string> violations(const PhysicalParams& p) {
  std::vector<std::string> out;
  auto positive = [&](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) out.push_back(std::string(name) + " must be > 0");
  };
  auto non_negative = [&](double v, const char* name) {
    if (!(std::isfinite(v) && v >= 0.0)) out.push_back(std::string(name) + " must be >= 0");
  };
  positive(p.wavelength, "wavelength");
  positive(p.quality_factor, "quality_factor");
  positive(p.mode_volume, "mode_volume");
  positive(p.refractive_index, "refractive_index");
  positive(p.radius, "radius");
  non_negative(p.input_power, "input_power");
  non_negative(p.nonlinear_index, "nonlinear_index");
  non_negative(p.backscattering, "backscattering");
  non_negative(p.angular_velocity, "angular_velocity");
  if (!std::isfinite(p.detuning)) out.emplace_back("detuning must be finite");
  if (!std::isfinite(p.dispersion)) out.emplace_back("dispersion must be finite");
  if (std::isfinite(p.refractive_index) && p.refractive_index <= 1.0)
    out.emplace_back("refractive_index must be > 1");
  else if (std::isfinite(p.refractive_index) && p.wavelength > 0.0 && std::isfinite(p.dispersion) &&
           sagnac_factor(p) <= 0.0)
    out.emplace_back("Sagnac factor 1 - 1/n1^2 - (lambda/n1) dn1/dlambda must be > 0");
  return out;
}

void validate(const PhysicalParams& p) {
  const auto v = violations(p);
  if (v.empty()) return;
  std::string msg = "invalid parameters:";
  for (const auto& s : v) msg += " [" + s + "]";
  throw InvalidParams(msg);
}

double sagnac_shift(const PhysicalParams& p) {
  const double omega_c = 2.0 * constants::pi * constants::speed_of_light / p.wavelength;
  return p.refractive_index * p.radius * p.angular_velocity * omega_c / constants::speed_of_light *
         sagnac_factor(p);
}

DerivedParams derive(const PhysicalParams& p) {
  validate(p);
  using constants::hbar;
  using constants::speed_of_light;
  DerivedParams d;
  d.omega_c = 2.0 * constants::pi * speed_of_light / p.wavelength;
  d.gamma = d.omega_c / p.quality_factor;
  const double n1 = p.refractive_index;
  d.chi = hbar * d.omega_c * d.omega_c * speed_of_light * p.nonlinear_index / (n1 * n1 * p.mode_volume);
  // The laser sits within a few linewidths of the cavity, so omega_l ~ omega_c.
  d.xi = std::sqrt(d.gamma * p.input_power / (hbar * d.omega_c));
  d.sagnac = sagnac_shift(p);
  d.detuning = p.detuning;
  d.backscattering = p.backscattering;
  d.drive = p.drive;
  require_finite(d.omega_c, "omega_c");
  require_finite(d.gamma, "gamma");
  require_finite(d.chi, "chi");
  require_finite(d.xi, "xi");
  require_finite(d.sagnac, "sagnac shift");
  validate(d);
  return d;
}

DerivedParams apply(DerivedParams d, const RateOverrides& o) {
  if (o.xi) d.xi = *o.xi;
  if (o.chi) d.chi = *o.chi;
  if (o.chi_over_gamma) d.chi = *o.chi_over_gamma * d.gamma;
  validate(d);
  return d;
}

void validate(const DerivedParams& d) {
  std::string msg;
  if (!(std::isfinite(d.gamma) && d.gamma > 0.0)) msg += " [gamma must be > 0]";
  if (!(std::isfinite(d.chi) && d.chi >= 0.0)) msg += " [chi must be >= 0]";
  if (!(std::isfinite(d.xi) && d.xi >= 0.0)) msg += " [xi must be >= 0]";
  if (!std::isfinite(d.sagnac)) msg += " [sagnac shift must be finite]";
  if (!std::isfinite(d.detuning)) msg += " [detuning must be finite]";
  if (!(std::isfinite(d.backscattering) && d.backscattering >= 0.0)) msg += " [J must be >= 0]";
  if (!msg.empty()) throw InvalidParams("invalid rates:" + msg);
}

std::string params_hash(const DerivedParams& d, int cutoff_cw, int cutoff_ccw) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (double v : {d.omega_c, d.gamma, d.chi, d.xi, d.sagnac, d.detuning, d.backscattering})
    mix(std::bit_cast<std::uint64_t>(v));
  mix(d.drive == Mode::Cw ? 0U : 1U);
  mix(static_cast<std::uint64_t>(cutoff_cw));
  mix(static_cast<std::uint64_t>(cutoff_ccw));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PhysicalParams default_preset() {
  PhysicalParams p;
  p.wavelength = 1550e-9;
  p.quality_factor = 5e9;
  p.mode_volume = 310e-18;
  p.refractive_index = 1.4;
  p.nonlinear_index = 3e-14;
  p.dispersion = 0.0;
  p.input_power = 2e-15;
  p.radius = 30e-6;
  p.angular_velocity = 0.0;
  p.detuning = 0.0;
  const double gamma = 2.0 * constants::pi * constants::speed_of_light / p.wavelength / p.quality_factor;
  p.backscattering = 2.0 * gamma;
  p.drive = Mode::Cw;
  return p;
}

std::optional<PhysicalParams> preset_by_name(std::string_view name) {
  if (name == "paper") return default_preset();
  return std::nullopt;
}

nlohmann::json to_json(const PhysicalParams& p) {
  return {
      {"wavelength", p.wavelength},
      {"quality_factor", p.quality_factor},
      {"mode_volume", p.mode_volume},
      {"refractive_index", p.refractive_index},
      {"nonlinear_index", p.nonlinear_index},
      {"dispersion", p.dispersion},
      {"input_power", p.input_power},
      {"radius", p.radius},
      {"angular_velocity", p.angular_velocity},
      {"detuning", p.detuning},
      {"backscattering", p.backscattering},
      {"drive_direction", std::string(to_string(p.drive))},
  };
}

nlohmann::json to_json(const DerivedParams& d) {
  return {
      {"omega_c", d.omega_c},
      {"gamma", d.gamma},
      {"chi", d.chi},
      {"xi", d.xi},
      {"sagnac_shift", d.sagnac},
      {"detuning", d.detuning},
      {"backscattering", d.backscattering},
      {"drive_direction", std::string(to_string(d.drive))},
      {"chi_over_gamma", d.chi / d.gamma},
      {"xi_over_gamma", d.xi / d.gamma},
      {"J_over_gamma", d.backscattering / d.gamma},
  };
}

PhysicalParams params_from_json(const nlohmann::json& j, PhysicalParams base) {
  if (!j.is_object()) throw InvalidParams("parameter config must be a JSON object");
  std::string problems;
  auto number = [&](const std::string& key, double& field) {
    const auto& v = j.at(key);
    if (v.is_number())
      field = v.get<double>();
    else
      problems += " [" + key + " must be a number]";
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "wavelength") number(key, base.wavelength);
    else if (key == "quality_factor") number(key, base.quality_factor);
    else if (key == "mode_volume") number(key, base.mode_volume);
    else if (key == "refractive_index") number(key, base.refractive_index);
    else if (key == "nonlinear_index") number(key, base.nonlinear_index);
    else if (key == "dispersion") number(key, base.dispersion);
    else if (key == "input_power") number(key, base.input_power);
    else if (key == "radius") number(key, base.radius);
    else if (key == "angular_velocity") number(key, base.angular_velocity);
    else if (key == "detuning") number(key, base.detuning);
    else if (key == "backscattering") number(key, base.backscattering);
    else if (key == "drive_direction") {
      if (value.is_string() && (value == "CW" || value == "CCW"))
        base.drive = mode_from_string(value.get<std::string>());
      else
        problems += " [drive_direction must be \"CW\" or \"CCW\"]";
    } else {
      problems += " [unknown key '" + key + "']";
    }
  }
  for (const auto& v : violations(base)) problems += " [" + v + "]";
  if (!problems.empty()) throw InvalidParams("invalid parameters:" + problems);
  return base;
}

PhysicalParams load_params(const std::string& path, PhysicalParams base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams("config '" + path + "' is not valid JSON: " + e.what());
  }
  return params_from_json(j, base);
}

}  // namespace chiralpb
