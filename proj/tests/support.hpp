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

#include <cmath>
#include <random>

#include "chiralpb/params.hpp"

namespace chiralpb::testing {

// Reference rates of the default preset (rad/s).
inline constexpr double kGamma = 243051.8151366262;
inline constexpr double kChi = 2305356.5283517865;
inline constexpr double kXi = 61587.40640188516;
inline constexpr double kSagnacAt30k = 2501692.214471502;

inline DerivedParams default_point(double delta0, double omega, double J_over_gamma = 2.0) {
  PhysicalParams p = default_preset();
  p.detuning = delta0;
  p.angular_velocity = omega;
  p.backscattering = J_over_gamma * kGamma;
  return derive(p);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Reproducible draws for property tests.
class Draw {
 public:
  explicit Draw(unsigned seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

 private:
  std::mt19937 gen_;
};

}  // namespace chiralpb::testing
