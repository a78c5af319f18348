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

#include "chiralpb/analytic.hpp"

#include <cmath>

#include "chiralpb/errors.hpp"

namespace chiralpb {

namespace {

// Signed shift of the driven mode: +S for CW, -S for CCW.
double driven_shift(const DerivedParams& d) {
  const double s = std::abs(d.sagnac);
  return d.drive == Mode::Cw ? s : -s;
}

double rate_scale(const DerivedParams& d) {
  return d.gamma + std::abs(d.detuning) + std::abs(d.sagnac) + d.chi + d.backscattering;
}

bool driven(const DerivedParams& d, Mode mode) { return mode == d.drive; }

}  // namespace

DetuningLadder ladder(const DerivedParams& d) {
  validate(d);
  const Complex loss(0.0, -0.5 * d.gamma);
  const double shift = driven_shift(d);
  const double chi = d.chi;
  const double j2 = d.backscattering * d.backscattering;

  DetuningLadder l;
  auto& D = l.delta;
  D[0] = d.detuning + shift + loss;
  D[1] = d.detuning - shift + loss;
  D[2] = 2.0 * (D[0] + chi);
  D[3] = D[0] + D[1] + 2.0 * chi;
  D[4] = 2.0 * (D[1] + chi);
  D[5] = 3.0 * (D[0] + 2.0 * chi);
  D[6] = 2.0 * D[0] + D[1] + 6.0 * chi;
  D[7] = D[0] + 2.0 * D[1] + 6.0 * chi;
  D[8] = 3.0 * (D[1] + 2.0 * chi);

  l.eta[0] = D[0] * D[1] - j2;
  l.eta[1] = D[2] * D[3] - 2.0 * j2;
  l.eta[2] = D[3] * D[4] - 2.0 * j2;
  l.eta[3] = D[5] * D[6] - 3.0 * j2;
  l.eta[4] = D[7] * D[8] - 3.0 * j2;
  l.sigma[0] = D[4] * l.eta[1] - 2.0 * j2 * D[2];
  l.sigma[1] = l.eta[3] * l.eta[4] - 4.0 * j2 * D[5] * D[8];
  return l;
}

Complex AmplitudeSet::amplitude(int m, int n) const {
  if (m < 0 || n < 0 || m + n > 3) throw DimensionMismatch("amplitude outside the N <= 3 truncation");
  switch (m * 10 + n) {
    case 0: return 1.0;
    case 10: return c10;
    case 1: return c01;
    case 20: return c20;
    case 11: return c11;
    case 2: return c02;
    case 30: return c30;
    case 21: return c21;
    case 12: return c12;
    case 3: return c03;
    default: break;
  }
  return 0.0;
}

AmplitudeSet steady_amplitudes(const DerivedParams& d) {
  const auto l = ladder(d);
  const double s = rate_scale(d);
  if (std::abs(l.eta[0]) < 1e-12 * s * s || std::abs(l.sigma[0]) < 1e-12 * s * s * s ||
      std::abs(l.sigma[1]) < 1e-12 * s * s * s * s)
    throw ResonantDegeneracy("weak-drive amplitudes have a vanishing denominator");

  const auto& D = l.delta;
  const auto& eta = l.eta;
  const Complex s1 = l.sigma[0];
  const Complex s2 = l.sigma[1];
  const double xi = d.xi;
  const double J = d.backscattering;
  const double J2 = J * J;
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);

  // Amplitudes in the driven-mode frame: p = driven photons, q = other mode.
  const Complex p10 = -xi * D[1] / eta[0];
  const Complex p01 = J * xi / eta[0];
  const Complex p20 = -r2 * xi * (eta[2] * p10 - J * D[4] * p01) / s1;
  const Complex p11 = D[4] * xi * (2.0 * J * p10 - D[2] * p01) / s1;
  const Complex p02 = r2 * J * xi * (D[2] * p01 - 2.0 * J * p10) / s1;
  const Complex p30 =
      r3 * xi * (-(eta[4] * D[6] - 4.0 * J2 * D[8]) * p20 + r2 * J * eta[4] * p11 - 2.0 * J2 * D[8] * p02) / s2;
  const Complex p21 = xi * (3.0 * J * eta[4] * p20 - r2 * eta[4] * D[5] * p11 + 2.0 * J * D[5] * D[8] * p02) / s2;
  const Complex p12 = xi * D[8] * (-6.0 * J2 * p20 + 2.0 * r2 * J * D[5] * p11 - eta[3] * p02) / s2;
  const Complex p03 = r3 * xi * J * (6.0 * J2 * p20 - 2.0 * r2 * J * D[5] * p11 + eta[3] * p02) / s2;

  if (d.drive == Mode::Cw) return {p10, p01, p20, p11, p02, p30, p21, p12, p03};
  return {p01, p10, p02, p11, p20, p03, p12, p21, p30};
}

namespace {

double ratio(const AmplitudeSet& a, Mode mode, int order) {
  const double p1 = mode == Mode::Cw ? a.probability(1, 0) : a.probability(0, 1);
  const double pk = mode == Mode::Cw ? a.probability(order, 0) : a.probability(0, order);
  if (!(p1 > 0.0))
    throw UndefinedCorrelation("analytic g" + std::to_string(order) + "(0) undefined: " +
                               std::string(to_string(mode)) + " one-photon probability vanishes");
  const double factorial = order == 2 ? 2.0 : 6.0;
  const double value = factorial * pk / std::pow(p1, order);
  if (!std::isfinite(value)) throw UndefinedCorrelation("analytic correlation overflowed");
  return value;
}

}  // namespace

double g2_analytic(const DerivedParams& d, Mode mode) { return ratio(steady_amplitudes(d), mode, 2); }

double g3_analytic(const DerivedParams& d, Mode mode) { return ratio(steady_amplitudes(d), mode, 3); }

double g2_closed_form(const DerivedParams& d, Mode mode) {
  const auto l = ladder(d);
  const auto& D = l.delta;
  const double J = d.backscattering;
  if (d.xi == 0.0) throw UndefinedCorrelation("analytic g2(0) is undefined without drive");
  if (driven(d, mode)) {
    const Complex num = l.eta[0] * (D[1] * D[3] * D[4] + 2.0 * J * J * d.chi);
    return 4.0 * std::norm(num / (l.sigma[0] * D[1] * D[1]));
  }
  if (J == 0.0)
    throw UndefinedCorrelation("analytic g2(0) of the undriven mode is undefined without backscattering");
  return 16.0 * std::norm(l.eta[0] * (D[3] - d.chi) / l.sigma[0]);
}

double g2_single_mode(const DerivedParams& d) {
  const double detuning = d.detuning + driven_shift(d);
  const double quarter = 0.25 * d.gamma * d.gamma;
  return (detuning * detuning + quarter) / ((detuning + d.chi) * (detuning + d.chi) + quarter);
}

}  // namespace chiralpb
