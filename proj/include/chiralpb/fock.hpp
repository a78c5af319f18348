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

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "chiralpb/params.hpp"

namespace chiralpb {

using Complex = std::complex<double>;

/// Rectangular truncation of the two-mode Fock space, |m, n> with
/// 0 <= m <= cutoff(CW) and 0 <= n <= cutoff(CCW). Flat ordering is CW-major:
/// index(m, n) = m * (cutoff(CCW) + 1) + n.
class FockSpace {
 public:
  FockSpace(int cutoff_cw, int cutoff_ccw);

  int cutoff(Mode mode) const { return mode == Mode::Cw ? cutoff_cw_ : cutoff_ccw_; }
  int levels(Mode mode) const { return cutoff(mode) + 1; }
  std::size_t dim() const { return dim_; }

  std::size_t index(int m, int n) const;
  std::pair<int, int> occupation(std::size_t flat) const;

  bool operator==(const FockSpace&) const = default;

 private:
  int cutoff_cw_;
  int cutoff_ccw_;
  std::size_t dim_;
};

FockSpace build_space(int cutoff_cw, int cutoff_ccw);

struct Entry {
  std::size_t row;
  std::size_t col;
  Complex value;
};

/// Immutable complex sparse matrix in compressed-row form. Built from a
/// coordinate list; duplicate coordinates and non-finite values are rejected.
class SparseComplexMatrix {
 public:
  using Storage = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

  SparseComplexMatrix() = default;
  explicit SparseComplexMatrix(Storage storage);

  static SparseComplexMatrix from_entries(std::size_t rows, std::size_t cols,
                                          const std::vector<Entry>& entries);
  static SparseComplexMatrix identity(std::size_t n);
  static SparseComplexMatrix zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  std::size_t nonzeros() const { return static_cast<std::size_t>(m_.nonZeros()); }
  Complex coeff(std::size_t row, std::size_t col) const;

  /// Stored entries in row-major order, explicit zeros skipped.
  std::vector<Entry> entries() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(m_); }
  const Storage& eigen() const { return m_; }

  /// Exact elementwise equality (explicit zeros ignored).
  bool operator==(const SparseComplexMatrix& other) const;

 private:
  Storage m_;
};

SparseComplexMatrix annihilation(const FockSpace& space, Mode mode);
SparseComplexMatrix number_op(const FockSpace& space, Mode mode);

/// A * B.
SparseComplexMatrix compose(const SparseComplexMatrix& a, const SparseComplexMatrix& b);
SparseComplexMatrix adjoint(const SparseComplexMatrix& a);
/// A + alpha * B.
SparseComplexMatrix add_scaled(const SparseComplexMatrix& a, Complex alpha,
                               const SparseComplexMatrix& b);
SparseComplexMatrix scale(Complex alpha, const SparseComplexMatrix& a);
SparseComplexMatrix transpose(const SparseComplexMatrix& a);
SparseComplexMatrix conjugate(const SparseComplexMatrix& a);
/// Kronecker product A (x) B.
SparseComplexMatrix kron(const SparseComplexMatrix& a, const SparseComplexMatrix& b);

/// a^dagger^k a^k for the given mode.
SparseComplexMatrix normal_ordered_power(const FockSpace& space, Mode mode, int k);

/// Triplet text dump: a "# rows cols nnz" header followed by one
/// "row col re im" line per stored entry, values printed with 17 digits.
void write_triplets(const std::string& path, const SparseComplexMatrix& a);
SparseComplexMatrix read_triplets(const std::string& path);

}  // namespace chiralpb
