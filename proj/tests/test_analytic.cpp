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

#include <doctest.h>

#include <array>

#include "chiralpb/analytic.hpp"
#include "chiralpb/errors.hpp"
#include "chiralpb/model.hpp"
#include "chiralpb/observables.hpp"
#include "chiralpb/steadystate.hpp"
#include "support.hpp"

using namespace chiralpb;
using namespace chiralpb::testing;

namespace {

struct FrozenAnalytic {
  double delta0, omega, J_over_gamma;
  std::array<double, 4> values;  // g2 CW, g3 CW, g2 CCW, g3 CCW
};

// Independent implementation of the weak-drive amplitude recursion.
const std::array<FrozenAnalytic, 5> kFrozen = {{
    {-2.3e6, 3e4, 2.0, {0.012404738108618205, 4.3409361824401228e-05, 3.8207878132569282, 0.033523776283346921}},
    {-3.5e6, 3e4, 2.0, {0.48334589299788028, 0.03344442195183113, 4.9790184363821659, 24.815787214946635}},
    {0.0, 0.0, 2.0, {0.95392145153053443, 0.21881080096840513, 0.00061221492518824278, 2.7150345123039211e-08}},
    {-2.105e6, 0.0, 2.0, {19.273128860455603, 11.324304862871086, 6352.1930393665125, 397.7988033709301}},
    {1.5e6, 1e4, 1.0, {0.24165459347665647, 0.025748643817493776, 0.0059901791712662, 4.5318348504517315e-06}},
}};

double numeric_g2(const DerivedParams& d, Mode mode, int cutoff = 4) {
  const FockSpace s = build_space(cutoff, cutoff);
  return g2(solve_steady(liouvillian(d, s), s, {.rate_unit = d.gamma}), mode);
}

}  // namespace

TEST_CASE("weak-drive correlations match the reference recursion") {
  for (const auto& f : kFrozen) {
    CAPTURE(f.delta0);
    const DerivedParams d = default_point(f.delta0, f.omega, f.J_over_gamma);
    CHECK(rel(g2_analytic(d, Mode::Cw), f.values[0]) < 1e-10);
    CHECK(rel(g3_analytic(d, Mode::Cw), f.values[1]) < 1e-10);
    CHECK(rel(g2_analytic(d, Mode::Ccw), f.values[2]) < 1e-10);
    CHECK(rel(g3_analytic(d, Mode::Ccw), f.values[3]) < 1e-9);
    CHECK(rel(g2_closed_form(d, Mode::Cw), f.values[0]) < 1e-10);
    CHECK(rel(g2_closed_form(d, Mode::Ccw), f.values[2]) < 1e-10);
  }
}

TEST_CASE("detuning ladder") {
  const DerivedParams d = default_point(-1e6, 2e4, 1.5);
  const DetuningLadder l = ladder(d);
  const Complex d1(d.detuning + d.sagnac, -d.gamma / 2), d2(d.detuning - d.sagnac, -d.gamma / 2);
  CHECK(std::abs(l.detuning(1) - d1) < 1e-6);
  CHECK(std::abs(l.detuning(2) - d2) < 1e-6);
  CHECK(std::abs(l.detuning(4) - (d1 + d2 + 2 * d.chi)) < 1e-6);
  CHECK(std::abs(l.detuning(9) - 3.0 * (d2 + 2 * d.chi)) < 1e-6);
  const double J2 = d.backscattering * d.backscattering;
  CHECK(std::abs(l.eta[0] - (d1 * d2 - J2)) < 1e-6 * std::abs(l.eta[0]));
  CHECK_THROWS(l.detuning(10));
}

TEST_CASE("closed form equals the amplitude ratio") {
  Draw draw(31);
  for (int trial = 0; trial < 40; ++trial) {
    DerivedParams d = default_point(draw.uniform(-6e6, 6e6), draw.uniform(0, 5e4), draw.uniform(0.05, 3));
    d.chi = draw.uniform(0, 15) * d.gamma;
    for (Mode mode : {Mode::Cw, Mode::Ccw}) CHECK(rel(g2_closed_form(d, mode), g2_analytic(d, mode)) < 1e-9);
  }
}

TEST_CASE("single-mode limit") {
  Draw draw(37);
  for (int trial = 0; trial < 40; ++trial) {
    DerivedParams d = default_point(draw.uniform(-6e6, 6e6), draw.uniform(0, 3e4), 0.0);
    CHECK(rel(g2_single_mode(d), g2_closed_form(d, Mode::Cw)) < 1e-10);
    CHECK(rel(g2_single_mode(d), g2_analytic(d, Mode::Cw)) < 1e-10);
  }
  const DerivedParams d = default_point(0.0, 0.0, 0.0);
  CHECK_THROWS_AS(g2_closed_form(d, Mode::Ccw), UndefinedCorrelation);
  CHECK_THROWS_AS(g2_analytic(d, Mode::Ccw), UndefinedCorrelation);
}

TEST_CASE("counter-clockwise drive") {
  Draw draw(41);
  SUBCASE("mirror image of the clockwise drive without rotation") {
    for (int trial = 0; trial < 10; ++trial) {
      const DerivedParams cw = default_point(draw.uniform(-4e6, 4e6), 0.0, draw.uniform(0.5, 2.5));
      DerivedParams ccw = cw;
      ccw.drive = Mode::Ccw;
      CHECK(rel(g2_analytic(ccw, Mode::Ccw), g2_analytic(cw, Mode::Cw)) < 1e-12);
      CHECK(rel(g3_analytic(ccw, Mode::Cw), g3_analytic(cw, Mode::Ccw)) < 1e-12);
      CHECK(rel(g2_closed_form(ccw, Mode::Cw), g2_closed_form(cw, Mode::Ccw)) < 1e-12);
      if (trial < 3) CHECK(rel(numeric_g2(ccw, Mode::Ccw), numeric_g2(cw, Mode::Cw)) < 1e-8);
    }
  }
  SUBCASE("weak-drive agreement with rotation") {
    for (double delta0 : {-2.3e6, 2.3e6}) {
      DerivedParams d = default_point(delta0, 3e4);
      d.drive = Mode::Ccw;
      d.xi = 0.02 * d.gamma;
      for (Mode mode : {Mode::Cw, Mode::Ccw}) CHECK(rel(g2_closed_form(d, mode), numeric_g2(d, mode)) < 0.05);
    }
  }
}

TEST_CASE("weak-drive limit converges to the master equation") {
  // Halving xi shrinks the analytic/numeric gap and keeps it small at xi = 0.02 gamma.
  for (double delta0 : {-3.5e6, -2.3e6, 0.0, 2e6}) {
    CAPTURE(delta0);
    DerivedParams d = default_point(delta0, 3e4);
    d.xi = 0.02 * d.gamma;
    DerivedParams h = d;
    h.xi = 0.5 * d.xi;
    for (Mode mode : {Mode::Cw, Mode::Ccw}) {
      const double full = rel(g2_closed_form(d, mode), numeric_g2(d, mode));
      const double half = rel(g2_closed_form(h, mode), numeric_g2(h, mode));
      CHECK(full < 0.05);
      CHECK(half <= full);
    }
  }
}

TEST_CASE("amplitude access and degeneracy") {
  const AmplitudeSet a = steady_amplitudes(default_point(-1e6, 1e4));
  CHECK(a.amplitude(2, 1) == a.c21);
  CHECK(a.probability(0, 3) == std::norm(a.c03));
  CHECK_THROWS_AS(a.amplitude(2, 2), DimensionMismatch);
  CHECK_THROWS_AS(a.amplitude(-1, 0), DimensionMismatch);

  DerivedParams d = default_point(1e6, 0.0, 0.0);
  d.gamma = 1e-9;
  d.backscattering = 1e6;
  CHECK_THROWS_AS(steady_amplitudes(d), ResonantDegeneracy);

  DerivedParams z = default_point(0.0, 0.0);
  z.xi = 0.0;
  CHECK_THROWS_AS(g2_analytic(z, Mode::Cw), UndefinedCorrelation);
  CHECK_THROWS_AS(g2_closed_form(z, Mode::Cw), UndefinedCorrelation);
}
