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

#include <cmath>
#include <numeric>

#include "chiralpb/errors.hpp"
#include "chiralpb/model.hpp"
#include "chiralpb/observables.hpp"
#include "chiralpb/steadystate.hpp"
#include "support.hpp"

using namespace chiralpb;
using namespace chiralpb::testing;

namespace {

DensityMatrix steady(const DerivedParams& d, int cutoff = 4) {
  const FockSpace s = build_space(cutoff, cutoff);
  return solve_steady(liouvillian(d, s), s, {.rate_unit = d.gamma});
}

}  // namespace

TEST_CASE("regime classification") {
  CHECK(classify(0.5, 0.1) == Regime::OnePB);
  CHECK(classify(0.5, 3.0) == Regime::OnePB);
  CHECK(classify(2.0, 0.5) == Regime::TwoPB);
  CHECK(classify(2.0, 3.0) == Regime::PIT);
  CHECK(classify(1.0, 3.0) == Regime::None);
  CHECK(classify(2.0, 1.0 + 1e-9) == Regime::None);
  for (Regime r : {Regime::OnePB, Regime::TwoPB, Regime::PIT, Regime::None}) CHECK(regime_from_string(to_string(r)) == r);
  CHECK(to_string(Regime::OnePB) == "ONE_PB");
  CHECK_THROWS(regime_from_string("blockade"));
}

TEST_CASE("correlations of Fock states") {
  const FockSpace s = build_space(3, 3);
  const DensityMatrix two = fock_state(s, 2, 0);
  CHECK(mean_photon(two, Mode::Cw) == doctest::Approx(2.0));
  CHECK(g2(two, Mode::Cw) == doctest::Approx(0.5));
  CHECK(g3(two, Mode::Cw) == doctest::Approx(0.0));
  CHECK_THROWS_AS(g2(two, Mode::Ccw), UndefinedCorrelation);
  const DensityMatrix three = fock_state(s, 1, 3);
  CHECK(g2(three, Mode::Ccw) == doctest::Approx(2.0 / 3.0));
  CHECK(g3(three, Mode::Ccw) == doctest::Approx(6.0 / 27.0));
  CHECK_THROWS_AS(correlation(fock_state(build_space(2, 2), 2, 0), Mode::Cw, 3), UndefinedCorrelation);
}

TEST_CASE("undriven resonator has undefined correlations") {
  DerivedParams d = default_point(-2.3e6, 3e4);
  d.xi = 0.0;
  const DensityMatrix state = steady(d);
  const CorrelationResult r = correlations(state, d);
  for (Mode mode : {Mode::Cw, Mode::Ccw}) {
    CHECK(r[mode].mean_photon == 0.0);
    CHECK_FALSE(r[mode].excitation.has_value());
    CHECK_FALSE(r[mode].g2.has_value());
    CHECK_FALSE(r[mode].g3.has_value());
    CHECK(r[mode].regime == Regime::None);
  }
  CHECK_THROWS_AS(excitation_spectrum(state, Mode::Cw, d), UndefinedCorrelation);
}

TEST_CASE("excitation spectrum normalisation") {
  const DerivedParams d = default_point(0.0, 0.0);
  const DensityMatrix state = steady(d);
  const double n0 = 4 * d.xi * d.xi / (d.gamma * d.gamma);
  CHECK(excitation_spectrum(state, Mode::Cw, d) == doctest::Approx(mean_photon(state, Mode::Cw) / n0));
}

TEST_CASE("photon distributions agree with operator moments") {
  Draw draw(23);
  for (int trial = 0; trial < 12; ++trial) {
    const DerivedParams d = default_point(draw.uniform(-6e6, 6e6), draw.uniform(0, 3e4), draw.uniform(0, 2));
    CAPTURE(d.detuning);
    const DensityMatrix state = steady(d);
    for (Mode mode : {Mode::Cw, Mode::Ccw}) {
      const PhotonDistribution p = photon_distribution(state, mode);
      CHECK(p.probability.size() == 5);
      CHECK(std::abs(std::accumulate(p.probability.begin(), p.probability.end(), 0.0) - 1.0) < 1e-10);
      CHECK(rel(p.mean, mean_photon(state, mode)) < 1e-8);
      if (p.mean > kPhotonFloor)
        CHECK(rel(correlation_from_distribution(p.probability, 2), g2(state, mode)) < 1e-8);
      for (double pk : p.probability) CHECK(pk > -1e-12);
    }
  }
}

TEST_CASE("Poisson reference") {
  const auto p = poisson_reference(0.5, 4);
  CHECK(p.size() == 5);
  CHECK(p[0] == doctest::Approx(std::exp(-0.5)));
  CHECK(p[2] == doctest::Approx(0.125 * std::exp(-0.5)));
  const auto z = poisson_reference(0.0, 3);
  CHECK(z[0] == 1.0);
  CHECK(z[3] == 0.0);
  CHECK(correlation_from_distribution(poisson_reference(1e-3, 12), 2) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(correlation_from_distribution({1.0, 0.0}, 2), UndefinedCorrelation);
}

TEST_CASE("correlation bundle") {
  const DerivedParams d = default_point(-3.5e6, 3e4);
  const CorrelationResult r = correlations(steady(d), d);
  CHECK(r.cw.regime == Regime::OnePB);
  CHECK(r.ccw.regime == Regime::PIT);
  CHECK(r.cw.excitation.has_value());
  CHECK(r.cw.distribution.poisson.size() == 5);
}
