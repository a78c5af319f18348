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

#include "chiralpb/density.hpp"

#include <cstdio>
#include <fstream>

#include "chiralpb/errors.hpp"

namespace chiralpb {

double DensityMatrix::population(int m, int n) const {
  const auto i = static_cast<Eigen::Index>(space.index(m, n));
  return rho(i, i).real();
}

DensityMatrix vacuum_state(const FockSpace& space) { return fock_state(space, 0, 0); }

DensityMatrix fock_state(const FockSpace& space, int m, int n) {
  DensityMatrix s{space, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(space.dim()),
                                                static_cast<Eigen::Index>(space.dim())),
                  {}};
  const auto i = static_cast<Eigen::Index>(space.index(m, n));
  s.rho(i, i) = 1.0;
  return s;
}

StateDiagnostics diagnose(const DensityMatrix& state) {
  StateDiagnostics diag;
  diag.hermiticity = (state.rho - state.rho.adjoint()).cwiseAbs().maxCoeff();
  diag.trace_error = std::abs(state.rho.trace() - Complex(1.0));
  const Eigen::MatrixXcd hermitian = 0.5 * (state.rho + state.rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hermitian, Eigen::EigenvaluesOnly);
  diag.min_eigenvalue = eig.eigenvalues().minCoeff();
  return diag;
}

void write_density(const std::string& path, const DensityMatrix& state) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << "# format chiralpb-density-1\n";
  out << "# cutoffs " << state.space.cutoff(Mode::Cw) << ' ' << state.space.cutoff(Mode::Ccw) << '\n';
  out << "# params_hash " << (state.params_hash.empty() ? "-" : state.params_hash) << '\n';
  char buf[96];
  for (Eigen::Index r = 0; r < state.rho.rows(); ++r)
    for (Eigen::Index c = 0; c < state.rho.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", state.rho(r, c).real(), state.rho(r, c).imag());
      out << buf;
    }
  if (!out) throw IoError("write failed for '" + path + "'");
}

DensityMatrix read_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string hash, key, format, params;
  int cw = 0, ccw = 0;
  if (!(in >> hash >> key >> format) || key != "format" || format != "chiralpb-density-1")
    throw IoError("'" + path + "': not a density snapshot");
  if (!(in >> hash >> key >> cw >> ccw) || key != "cutoffs") throw IoError("'" + path + "': bad cutoffs line");
  if (!(in >> hash >> key >> params) || key != "params_hash") throw IoError("'" + path + "': bad hash line");
  DensityMatrix s{FockSpace(cw, ccw), {}, params == "-" ? std::string() : params};
  const auto n = static_cast<Eigen::Index>(s.space.dim());
  s.rho.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      double re = 0, im = 0;
      if (!(in >> re >> im)) throw IoError("'" + path + "': truncated density data");
      s.rho(r, c) = Complex(re, im);
    }
  return s;
}

}  // namespace chiralpb
