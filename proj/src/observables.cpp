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

#include "chiralpb/observables.hpp"

#include <cmath>
#include <string>

#include "chiralpb/errors.hpp"
#include "chiralpb/fock.hpp"

namespace chiralpb {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::OnePB: return "ONE_PB";
    case Regime::TwoPB: return "TWO_PB";
    case Regime::PIT: return "PIT";
    case Regime::None: break;
  }
  return "NONE";
}

Regime regime_from_string(std::string_view text) {
  if (text == "ONE_PB") return Regime::OnePB;
  if (text == "TWO_PB") return Regime::TwoPB;
  if (text == "PIT") return Regime::PIT;
  if (text == "NONE") return Regime::None;
  throw InvalidParams("unknown regime '" + std::string(text) + "'");
}

Regime classify(double g2, double g3) {
  if (std::abs(g2 - 1.0) < kRegimeTieTolerance) return Regime::None;
  if (g2 < 1.0) return Regime::OnePB;
  if (std::abs(g3 - 1.0) < kRegimeTieTolerance) return Regime::None;
  return g3 < 1.0 ? Regime::TwoPB : Regime::PIT;
}

namespace {

// tr(A rho) for sparse A.
Complex expectation(const SparseComplexMatrix& op, const Eigen::MatrixXcd& rho) {
  Complex sum = 0.0;
  for (Eigen::Index r = 0; r < op.eigen().outerSize(); ++r)
    for (SparseComplexMatrix::Storage::InnerIterator it(op.eigen(), r); it; ++it)
      sum += it.value() * rho(it.col(), it.row());
  return sum;
}

}  // namespace

double mean_photon(const DensityMatrix& state, Mode mode) {
  return expectation(number_op(state.space, mode), state.rho).real();
}

double excitation_spectrum(const DensityMatrix& state, Mode mode, const DerivedParams& d) {
  if (!(d.xi > 0.0)) throw UndefinedCorrelation("excitation spectrum undefined without drive (xi = 0)");
  const double n0 = 4.0 * d.xi * d.xi / (d.gamma * d.gamma);
  return mean_photon(state, mode) / n0;
}

double correlation(const DensityMatrix& state, Mode mode, int order) {
  if (order < 1) throw InvalidParams("correlation order must be >= 1");
  if (state.space.cutoff(mode) < order)
    throw UndefinedCorrelation("g" + std::to_string(order) + "(0) needs a photon cutoff >= " +
                               std::to_string(order) + " in the " + std::string(to_string(mode)) +
                               " mode");
  const double n = mean_photon(state, mode);
  if (!(n > kPhotonFloor))
    throw UndefinedCorrelation("g" + std::to_string(order) + "(0) undefined: " +
                               std::string(to_string(mode)) + " photon number below floor");
  const double moment = expectation(normal_ordered_power(state.space, mode, order), state.rho).real();
  return moment / std::pow(n, order);
}

std::vector<double> poisson_reference(double mean, int kmax) {
  std::vector<double> p(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (!(mean > 0.0)) {
    p[0] = 1.0;
    return p;
  }
  for (int k = 0; k <= kmax; ++k)
    p[static_cast<std::size_t>(k)] = std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
  return p;
}

PhotonDistribution photon_distribution(const DensityMatrix& state, Mode mode) {
  const auto& space = state.space;
  PhotonDistribution out;
  out.probability.assign(static_cast<std::size_t>(space.levels(mode)), 0.0);
  for (int m = 0; m <= space.cutoff(Mode::Cw); ++m)
    for (int n = 0; n <= space.cutoff(Mode::Ccw); ++n)
      out.probability[static_cast<std::size_t>(mode == Mode::Cw ? m : n)] += state.population(m, n);
  for (std::size_t k = 0; k < out.probability.size(); ++k) out.mean += double(k) * out.probability[k];
  out.poisson = poisson_reference(out.mean, space.cutoff(mode));
  return out;
}

double correlation_from_distribution(const std::vector<double>& probability, int order) {
  double n = 0.0, moment = 0.0;
  for (std::size_t k = 0; k < probability.size(); ++k) {
    n += double(k) * probability[k];
    double falling = 1.0;
    for (int i = 0; i < order; ++i) falling *= double(k) - i;
    moment += falling * probability[k];
  }
  if (!(n > kPhotonFloor)) throw UndefinedCorrelation("photon number below floor");
  return moment / std::pow(n, order);
}

CorrelationResult correlations(const DensityMatrix& state, const DerivedParams& d) {
  CorrelationResult result;
  for (Mode mode : {Mode::Cw, Mode::Ccw}) {
    auto& s = result[mode];
    s.mean_photon = mean_photon(state, mode);
    auto attempt = [](auto&& f) -> std::optional<double> {
      try {
        return f();
      } catch (const UndefinedCorrelation&) {
        return std::nullopt;
      }
    };
    s.excitation = attempt([&] { return excitation_spectrum(state, mode, d); });
    s.g2 = attempt([&] { return g2(state, mode); });
    s.g3 = attempt([&] { return g3(state, mode); });
    s.distribution = photon_distribution(state, mode);
    if (s.g2 && s.g3)
      s.regime = classify(*s.g2, *s.g3);
    else if (s.g2 && *s.g2 < 1.0 - kRegimeTieTolerance)
      s.regime = Regime::OnePB;
  }
  return result;
}

}  // namespace chiralpb
