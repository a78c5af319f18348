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

#include "chiralpb/figures.hpp"

#include "chiralpb/errors.hpp"

namespace chiralpb {

namespace {

AxisSpec detuning_axis(int count = kDetuningPoints) { return {Axis::Detuning, -kDetuningSpan, kDetuningSpan, count}; }

AxisSpec spin_axis(int count) { return {Axis::AngularVelocity, kPresetSpins.front(), kPresetSpins.back(), count}; }

SweepSpec make(std::string_view name, PhysicalParams base, int cutoff, std::vector<AxisSpec> axes,
               std::vector<Observable> observables, Oracle oracle) {
  SweepSpec s;
  s.name = std::string(name);
  s.base = base;
  s.cutoff = cutoff;
  s.axes = std::move(axes);
  s.observables = std::move(observables);
  s.oracle = oracle;
  return s;
}

double gamma_of(const PhysicalParams& p) { return derive(p).gamma; }

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig1b", "fig2a", "fig2b", "fig2c", "fig3a",
                                                 "fig3b", "fig3c", "fig3d", "fig3e"};
  return names;
}

std::vector<SweepSpec> figure_specs(std::string_view name, const PhysicalParams& base, int cutoff) {
  using O = Observable;
  PhysicalParams p = base;
  p.detuning = 0.0;
  p.angular_velocity = 0.0;
  const double gamma = gamma_of(p);
  const std::vector<O> correlations = {O::MeanPhoton, O::G2, O::G3};

  if (name == "fig1b")
    return {make(name, p, cutoff, {spin_axis(4), detuning_axis()}, {O::MeanPhoton, O::Excitation}, Oracle::Numeric)};
  if (name == "fig2a")
    return {make(name, p, cutoff, {{Axis::AngularVelocity, 0.0, kPresetSpins.back(), 2}, detuning_axis()},
                 correlations, Oracle::Both)};
  if (name == "fig2b") {
    p.angular_velocity = kPresetSpins.back();
    return {make(name, p, cutoff, {detuning_axis()}, correlations, Oracle::Both)};
  }
  if (name == "fig2c") {
    p.angular_velocity = kPresetSpins.back();
    return {make(name, p, cutoff, {{Axis::Detuning, -3.5e6, -2.3e6, 2}}, all_observables(), Oracle::Both)};
  }
  if (name == "fig3a")
    return {make(name, p, cutoff, {{Axis::Backscattering, 0.0, 2.0 * gamma, 3}, detuning_axis()}, correlations,
                 Oracle::Numeric)};
  if (name == "fig3b") {
    PhysicalParams uncoupled = p;
    uncoupled.backscattering = 0.0;
    PhysicalParams coupled = p;
    coupled.backscattering = 2.0 * gamma;
    return {make(name, uncoupled, cutoff, {spin_axis(4), detuning_axis()}, correlations, Oracle::Numeric),
            make(name, coupled, cutoff, {spin_axis(4), detuning_axis()}, correlations, Oracle::Numeric)};
  }
  if (name == "fig3c")
    return {make(name, p, cutoff, {spin_axis(kMapPoints), detuning_axis(kMapPoints)}, {O::MeanPhoton, O::G2},
                 Oracle::Numeric)};
  if (name == "fig3d") {
    p.detuning = kSwitchDetuning;
    return {make(name, p, cutoff, {spin_axis(kMapPoints)}, correlations, Oracle::Both)};
  }
  if (name == "fig3e") {
    p.detuning = kSwitchDetuning;
    return {make(name, p, cutoff, {spin_axis(4)}, all_observables(), Oracle::Numeric)};
  }
  throw InvalidParams("unknown figure preset '" + std::string(name) +
                      "' (expected fig1b, fig2a, fig2b, fig2c, fig3a, fig3b, fig3c, fig3d or fig3e)");
}

SweepResult figure_data(std::string_view name, const PhysicalParams& base, unsigned workers, int cutoff,
                        const RateOverrides& overrides) {
  SweepResult out;
  for (auto spec : figure_specs(name, base, cutoff)) {
    spec.overrides = overrides;
    out.append(run(spec, workers));
  }
  out.name = std::string(name);
  return out;
}

}  // namespace chiralpb
