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

#include "chiralpb/fock.hpp"
#include "chiralpb/params.hpp"

namespace chiralpb {

/// H (Hermitian), H_eff = H - i gamma/2 (n_cw + n_ccw), and the Liouvillian
/// acting on column-stacked density matrices (vec(rho)[i + j*D] = rho(i, j)).
/// All entries are in rad/s.
struct ModelMatrices {
  SparseComplexMatrix hamiltonian;
  SparseComplexMatrix effective_hamiltonian;
  SparseComplexMatrix liouvillian;
};

/// H = (D0 + S) n_cw + (D0 - S) n_ccw + J (a_cw^+ a_ccw + h.c.)
///   + chi (a_cw^+2 a_cw^2 + a_ccw^+2 a_ccw^2) + 2 chi n_cw n_ccw + xi (a_d^+ + a_d)
/// with S the Sagnac shift and a_d the driven mode.
SparseComplexMatrix hamiltonian(const DerivedParams& d, const FockSpace& space);

SparseComplexMatrix effective_hamiltonian(const DerivedParams& d, const FockSpace& space);

/// Generator of d rho/dt = -i[H, rho] + sum_j gamma/2 (2 a_j rho a_j^+ - a_j^+ a_j rho - rho a_j^+ a_j)
/// at zero temperature.
SparseComplexMatrix liouvillian(const DerivedParams& d, const FockSpace& space);

/// Lindblad generator for an arbitrary Hamiltonian and jump operators
/// (each jump already scaled by the square root of its rate).
SparseComplexMatrix lindblad_generator(const SparseComplexMatrix& h,
                                       const std::vector<SparseComplexMatrix>& jumps);

ModelMatrices build_model(const DerivedParams& d, const FockSpace& space);

/// Column-stacking helpers matching the Liouvillian convention.
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, std::size_t dim);

}  // namespace chiralpb
