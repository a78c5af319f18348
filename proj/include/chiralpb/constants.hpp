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

namespace chiralpb::constants {

inline constexpr double speed_of_light = 299'792'458.0;    // m/s
inline constexpr double hbar = 1.054'571'817e-34;          // J s
inline constexpr double pi = 3.141'592'653'589'793'238'46;

}  // namespace chiralpb::constants
