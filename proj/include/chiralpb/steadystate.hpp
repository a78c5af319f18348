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
#include <string>
#include <vector>

#include "chiralpb/density.hpp"
#include "chiralpb/fock.hpp"
#include "chiralpb/params.hpp"

namespace chiralpb {

enum class SteadyMethod {
  Auto,          // trace-row replacement up to kInversePowerThreshold, inverse power above
  TraceRow,      // L x = 0 with one row replaced by the trace functional, sparse LU
  InversePower,  // shifted inverse iteration towards the zero eigenvalue
};

/// Liouvillian size (D^2) above which Auto switches to inverse iteration.
inline constexpr std::size_t kInversePowerThreshold = 10'000;

struct SteadyOptions {
  SteadyMethod method = SteadyMethod::Auto;
  /// Rate used to make L dimensionless before factorizing (gamma in the
  /// physics pipeline). Defaults to the largest diagonal magnitude of L.
  std::optional<double> rate_unit;
  /// Relative size of the smallest singular value of the bordered system
  /// below which the steady state is declared non-unique.
  double degeneracy_threshold = 1e-8;
  /// Required ||L rho|| / (||L|| ||rho||).
  double residual_tolerance = 1e-10;
};

DensityMatrix solve_steady(const SparseComplexMatrix& liouvillian, const FockSpace& space,
                           const SteadyOptions& options = {});

/// ||L vec(rho)|| / (||L||_F ||rho||_F)
double relative_residual(const SparseComplexMatrix& liouvillian, const DensityMatrix& state);

struct EvolveOptions {
  double rtol = 1e-9;
  double atol = 1e-15;
  std::optional<double> rate_unit;
  /// Smallest accepted step in units of 1/rate_unit.
  double min_step = 1e-12;
  std::size_t max_steps = 5'000'000;
};

/// Integrates d rho/dt = L rho from rho0 over [0, t_final] (t in seconds)
/// with an adaptive Dormand-Prince 5(4) pair.
DensityMatrix evolve(const SparseComplexMatrix& liouvillian, const DensityMatrix& rho0, double t_final,
                     const EvolveOptions& options = {});

// Truncation convergence ------------------------------------------------------

struct ConvergenceQuantity {
  std::string name;               // e.g. "g2_cw"
  std::optional<double> coarse;   // nullopt: undefined at that cutoff
  std::optional<double> fine;
  double relative_change = 0.0;   // infinity when defined at only one cutoff
};

struct ConvergenceStep {
  int coarse_cutoff = 0;
  int fine_cutoff = 0;
  std::vector<ConvergenceQuantity> quantities;
  double max_relative_change = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceStep> steps;
  double threshold = 1e-3;
  bool pass = false;
};

/// Solves the steady state at each cutoff (same cutoff for both modes) and
/// compares N, g2, g3 of both modes between consecutive cutoffs.
ConvergenceReport convergence_check(const DerivedParams& d, const std::vector<int>& cutoffs,
                                    double threshold = 1e-3);

}  // namespace chiralpb
