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

#include <optional>
#include <string_view>
#include <vector>

#include "chiralpb/density.hpp"
#include "chiralpb/params.hpp"

namespace chiralpb {

/// Photon numbers below this make g^(k)(0) undefined rather than zero.
inline constexpr double kPhotonFloor = 1e-12;
/// |g - 1| below this is a classification tie.
inline constexpr double kRegimeTieTolerance = 1e-6;

enum class Regime { OnePB, TwoPB, PIT, None };

std::string_view to_string(Regime regime);
Regime regime_from_string(std::string_view text);

/// Photon blockade (g2 < 1), two-photon blockade (g2 > 1, g3 < 1) or
/// photon-induced tunnelling (g2 > 1, g3 > 1). None on ties with 1.
Regime classify(double g2, double g3);

double mean_photon(const DensityMatrix& state, Mode mode);

/// S = N / n0 with n0 = 4 xi^2 / gamma^2. Throws UndefinedCorrelation for xi = 0.
double excitation_spectrum(const DensityMatrix& state, Mode mode, const DerivedParams& d);

/// <a^+k a^k> / <a^+ a>^k from the operator trace. Throws UndefinedCorrelation
/// when N is below kPhotonFloor or the mode truncation holds fewer than k photons.
double correlation(const DensityMatrix& state, Mode mode, int order);
inline double g2(const DensityMatrix& state, Mode mode) { return correlation(state, mode, 2); }
inline double g3(const DensityMatrix& state, Mode mode) { return correlation(state, mode, 3); }

struct PhotonDistribution {
  std::vector<double> probability;  // P_k, k = 0..cutoff
  std::vector<double> poisson;      // Poisson with the same mean
  double mean = 0.0;

  bool operator==(const PhotonDistribution&) const = default;
};

PhotonDistribution photon_distribution(const DensityMatrix& state, Mode mode);

/// <k>^k e^{-<k>} / k! for k = 0..kmax.
std::vector<double> poisson_reference(double mean, int kmax);

/// sum_k k!/(k-order)! P_k / N^order, the same correlation from populations.
double correlation_from_distribution(const std::vector<double>& probability, int order);

struct ModeStatistics {
  double mean_photon = 0.0;
  std::optional<double> excitation;
  std::optional<double> g2;
  std::optional<double> g3;
  PhotonDistribution distribution;
  Regime regime = Regime::None;

  bool operator==(const ModeStatistics&) const = default;
};

struct CorrelationResult {
  ModeStatistics cw;
  ModeStatistics ccw;

  const ModeStatistics& operator[](Mode mode) const { return mode == Mode::Cw ? cw : ccw; }
  ModeStatistics& operator[](Mode mode) { return mode == Mode::Cw ? cw : ccw; }

  bool operator==(const CorrelationResult&) const = default;
};

/// Everything above for both modes; undefined quantities are left empty.
CorrelationResult correlations(const DensityMatrix& state, const DerivedParams& d);

}  // namespace chiralpb
