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

#include "chiralpb/model.hpp"

#include <cmath>

#include "chiralpb/errors.hpp"

namespace chiralpb {

SparseComplexMatrix hamiltonian(const DerivedParams& d, const FockSpace& space) {
  validate(d);
  const auto a_cw = annihilation(space, Mode::Cw);
  const auto a_ccw = annihilation(space, Mode::Ccw);
  const auto n_cw = number_op(space, Mode::Cw);
  const auto n_ccw = number_op(space, Mode::Ccw);
  const double shift = std::abs(d.sagnac);

  auto h = scale(d.detuning + shift, n_cw);
  h = add_scaled(h, d.detuning - shift, n_ccw);

  const auto hop = compose(adjoint(a_cw), a_ccw);
  h = add_scaled(h, d.backscattering, add_scaled(hop, 1.0, adjoint(hop)));

  const auto kerr = add_scaled(normal_ordered_power(space, Mode::Cw, 2), 1.0,
                               normal_ordered_power(space, Mode::Ccw, 2));
  h = add_scaled(h, d.chi, kerr);
  h = add_scaled(h, 2.0 * d.chi, compose(n_cw, n_ccw));

  const auto& a_d = d.drive == Mode::Cw ? a_cw : a_ccw;
  h = add_scaled(h, d.xi, add_scaled(a_d, 1.0, adjoint(a_d)));
  return h;
}

SparseComplexMatrix effective_hamiltonian(const DerivedParams& d, const FockSpace& space) {
  const auto n_total = add_scaled(number_op(space, Mode::Cw), 1.0, number_op(space, Mode::Ccw));
  return add_scaled(hamiltonian(d, space), Complex(0.0, -0.5 * d.gamma), n_total);
}

SparseComplexMatrix lindblad_generator(const SparseComplexMatrix& h,
                                       const std::vector<SparseComplexMatrix>& jumps) {
  if (h.rows() != h.cols()) throw DimensionMismatch("Hamiltonian must be square");
  const auto id = SparseComplexMatrix::identity(h.rows());
  // vec(A X B) = (B^T (x) A) vec(X)
  auto l = add_scaled(scale(Complex(0.0, -1.0), kron(id, h)), Complex(0.0, 1.0), kron(transpose(h), id));
  for (const auto& c : jumps) {
    if (c.rows() != h.rows() || c.cols() != h.cols()) throw DimensionMismatch("jump operator shape");
    const auto cdc = compose(adjoint(c), c);
    l = add_scaled(l, 1.0, kron(conjugate(c), c));
    l = add_scaled(l, -0.5, kron(id, cdc));
    l = add_scaled(l, -0.5, kron(transpose(cdc), id));
  }
  return l;
}

SparseComplexMatrix liouvillian(const DerivedParams& d, const FockSpace& space) {
  const double root = std::sqrt(d.gamma);
  return lindblad_generator(hamiltonian(d, space), {scale(root, annihilation(space, Mode::Cw)),
                                                    scale(root, annihilation(space, Mode::Ccw))});
}

ModelMatrices build_model(const DerivedParams& d, const FockSpace& space) {
  ModelMatrices m;
  m.hamiltonian = hamiltonian(d, space);
  const auto n_total = add_scaled(number_op(space, Mode::Cw), 1.0, number_op(space, Mode::Ccw));
  m.effective_hamiltonian = add_scaled(m.hamiltonian, Complex(0.0, -0.5 * d.gamma), n_total);
  const double root = std::sqrt(d.gamma);
  m.liouvillian = lindblad_generator(m.hamiltonian, {scale(root, annihilation(space, Mode::Cw)),
                                                     scale(root, annihilation(space, Mode::Ccw))});
  return m;
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, std::size_t dim) {
  if (static_cast<std::size_t>(v.size()) != dim * dim) throw DimensionMismatch("unvectorize: length");
  const auto n = static_cast<Eigen::Index>(dim);
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n);
}

}  // namespace chiralpb
