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

#include "chiralpb/fock.hpp"
#include "chiralpb/params.hpp"

namespace chiralpb {

/// Complex detunings of the weak-drive amplitude equations together with the
/// denominators of their steady state. Everything is expressed in the frame of
/// the driven mode: index 1 belongs to the driven mode, index 2 to the other
/// one (for a CW drive this is CW/CCW). Units: rad/s to the matching power.
struct DetuningLadder {
  std::array<Complex, 9> delta{};  // delta[k-1] is the k-th detuning
  std::array<Complex, 5> eta{};    // eta[k-1]
  std::array<Complex, 2> sigma{};  // sigma[k-1], the two- and three-photon denominators

  Complex detuning(int k) const { return delta.at(static_cast<std::size_t>(k - 1)); }
};

DetuningLadder ladder(const DerivedParams& d);

/// Steady-state amplitudes C_mn of the truncated (N <= 3) state, with C_00 = 1
/// and no renormalization. m counts CW photons, n counts CCW photons.
struct AmplitudeSet {
  Complex c10, c01, c20, c11, c02, c30, c21, c12, c03;

  Complex amplitude(int m, int n) const;
  double probability(int m, int n) const { return std::norm(amplitude(m, n)); }
};

/// Throws ResonantDegeneracy when eta_1, sigma_1 or sigma_2 vanish relative to
/// the rate scale of the problem.
AmplitudeSet steady_amplitudes(const DerivedParams& d);

/// 2 P_20 / P_10^2 (CW) or 2 P_02 / P_01^2 (CCW). Throws UndefinedCorrelation
/// when the one-photon probability of the mode vanishes (e.g. undriven mode at J = 0).
double g2_analytic(const DerivedParams& d, Mode mode);

/// 6 P_30 / P_10^3 (CW) or 6 P_03 / P_01^3 (CCW).
double g3_analytic(const DerivedParams& d, Mode mode);

/// Closed algebraic forms of g2 with the amplitudes eliminated:
/// driven mode 4 |eta_1 (D2 D4 D5 + 2 J^2 chi) / (sigma_1 D2^2)|^2,
/// other mode 16 |eta_1 (D4 - chi) / sigma_1|^2 (undefined for J = 0).
double g2_closed_form(const DerivedParams& d, Mode mode);

/// Single-mode limit (J = 0) for the driven mode:
/// ((D0 + S)^2 + gamma^2/4) / ((D0 + S + chi)^2 + gamma^2/4), S the signed shift of that mode.
double g2_single_mode(const DerivedParams& d);

}  // namespace chiralpb
