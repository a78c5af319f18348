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

#include <string>

#include <Eigen/Dense>

#include "chiralpb/fock.hpp"

namespace chiralpb {

/// Tolerances a physical density matrix must meet.
inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-8;

struct DensityMatrix {
  FockSpace space{1, 1};
  Eigen::MatrixXcd rho;
  std::string params_hash;

  std::size_t dim() const { return space.dim(); }
  /// <m,n| rho |m,n>
  double population(int m, int n) const;
};

DensityMatrix vacuum_state(const FockSpace& space);
/// |m,n><m,n|
DensityMatrix fock_state(const FockSpace& space, int m, int n);

struct StateDiagnostics {
  double hermiticity = 0.0;  // max |rho - rho^+|
  double trace_error = 0.0;  // |tr rho - 1|
  double min_eigenvalue = 0.0;

  bool physical() const {
    return hermiticity <= kHermiticityTolerance && trace_error <= kTraceTolerance &&
           min_eigenvalue >= -kPositivityTolerance;
  }
};

StateDiagnostics diagnose(const DensityMatrix& state);

/// Text snapshot: three "# key value" header lines (format, cutoffs, params
/// hash) followed by D*D "re im" lines in row-major order.
void write_density(const std::string& path, const DensityMatrix& state);
DensityMatrix read_density(const std::string& path);

}  // namespace chiralpb
