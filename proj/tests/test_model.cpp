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

#include "chiralpb/model.hpp"
#include "support.hpp"

using namespace chiralpb;
using namespace chiralpb::testing;

namespace {

Eigen::MatrixXcd random_density(Draw& draw, std::size_t dim) {
  Eigen::MatrixXcd a(dim, dim);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = {draw.uniform(-1, 1), draw.uniform(-1, 1)};
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("Hamiltonian matrix elements") {
  const DerivedParams d = default_point(-1e6, 3e4);
  const FockSpace s = build_space(3, 3);
  const auto h = hamiltonian(d, s);
  const double S = d.sagnac;
  CHECK(h.coeff(s.index(1, 0), s.index(1, 0)).real() == doctest::Approx(-1e6 + S).epsilon(1e-14));
  CHECK(h.coeff(s.index(0, 1), s.index(0, 1)).real() == doctest::Approx(-1e6 - S).epsilon(1e-14));
  CHECK(h.coeff(s.index(2, 0), s.index(2, 0)).real() == doctest::Approx(2 * (-1e6 + S) + 2 * d.chi).epsilon(1e-14));
  CHECK(h.coeff(s.index(1, 1), s.index(1, 1)).real() == doctest::Approx(-2e6 + 2 * d.chi).epsilon(1e-14));
  CHECK(h.coeff(s.index(1, 0), s.index(0, 1)).real() == doctest::Approx(d.backscattering));
  CHECK(h.coeff(s.index(1, 0), s.index(0, 0)).real() == doctest::Approx(d.xi));
  CHECK(h.coeff(s.index(0, 1), s.index(0, 0)) == Complex(0.0));
  CHECK((h.dense() - h.dense().adjoint()).cwiseAbs().maxCoeff() == 0.0);

  SUBCASE("drive on the counter-clockwise mode") {
    DerivedParams e = d;
    e.drive = Mode::Ccw;
    const auto g = hamiltonian(e, s);
    CHECK(g.coeff(s.index(0, 1), s.index(0, 0)).real() == doctest::Approx(d.xi));
    CHECK(g.coeff(s.index(1, 0), s.index(0, 0)) == Complex(0.0));
  }
  SUBCASE("effective Hamiltonian") {
    const auto heff = effective_hamiltonian(d, s);
    const Eigen::MatrixXcd diff = heff.dense() - h.dense();
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const auto [m, n] = s.occupation(i);
      CHECK(std::abs(diff(i, i) - Complex(0, -d.gamma / 2 * (m + n))) < 1e-9);
    }
  }
}

TEST_CASE("Liouvillian acts as the master equation") {
  Draw draw(5);
  const FockSpace s = build_space(3, 2);
  const DerivedParams d = default_point(-2.3e6, 3e4);
  const auto h = hamiltonian(d, s).dense();
  const auto a = annihilation(s, Mode::Cw).dense();
  const auto b = annihilation(s, Mode::Ccw).dense();
  const auto L = liouvillian(d, s);
  CHECK(L.rows() == s.dim() * s.dim());
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXcd rho = random_density(draw, s.dim());
    Eigen::MatrixXcd expect = Complex(0, -1) * (h * rho - rho * h);
    for (const Eigen::MatrixXcd& c : {a, b})
      expect += d.gamma / 2 * (2.0 * c * rho * c.adjoint() - c.adjoint() * c * rho - rho * c.adjoint() * c);
    const Eigen::MatrixXcd got = unvectorize(L.apply(vectorize(rho)), s.dim());
    CHECK((got - expect).norm() <= 1e-12 * expect.norm());
    CHECK(std::abs(got.trace()) <= 1e-9 * expect.norm());
    CHECK((got - got.adjoint()).norm() <= 1e-12 * expect.norm());
  }
}

TEST_CASE("undriven vacuum is stationary") {
  DerivedParams d = default_point(0.0, 1e4);
  d.xi = 0.0;
  const FockSpace s = build_space(2, 2);
  Eigen::MatrixXcd vac = Eigen::MatrixXcd::Zero(s.dim(), s.dim());
  vac(0, 0) = 1.0;
  CHECK(liouvillian(d, s).apply(vectorize(vac)).norm() == 0.0);
}

TEST_CASE("column stacking") {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const Eigen::VectorXcd v = vectorize(m);
  CHECK(v(1) == Complex(3.0));
  CHECK(v(2) == Complex(2.0));
  CHECK(unvectorize(v, 2) == m);
}

TEST_CASE("model bundle") {
  const DerivedParams d = default_point(0.0, 0.0);
  const FockSpace s = build_space(2, 2);
  const ModelMatrices m = build_model(d, s);
  CHECK(m.hamiltonian == hamiltonian(d, s));
  CHECK(m.liouvillian == liouvillian(d, s));
  CHECK(m.effective_hamiltonian == effective_hamiltonian(d, s));
}
