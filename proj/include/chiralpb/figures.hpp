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
#include <string>
#include <string_view>
#include <vector>

#include "chiralpb/sweep.hpp"

namespace chiralpb {

/// Names accepted by `figure_specs`: fig1b, fig2a, fig2b, fig2c, fig3a, fig3b,
/// fig3c, fig3d, fig3e.
const std::vector<std::string>& figure_names();

/// Spin rates of the spectra and switch presets (rad/s).
inline constexpr std::array<double, 4> kPresetSpins = {0.0, 10e3, 20e3, 30e3};

/// Sweeps that make up a figure dataset, in output order. `base` is usually
/// the default preset; its detuning, spin and coupling are replaced per sweep.
std::vector<SweepSpec> figure_specs(std::string_view name, const PhysicalParams& base,
                                    int cutoff = kDefaultCutoff);

/// Runs every sweep of the figure and concatenates the records.
SweepResult figure_data(std::string_view name, const PhysicalParams& base, unsigned workers = 1,
                        int cutoff = kDefaultCutoff, const RateOverrides& overrides = {});

}  // namespace chiralpb
