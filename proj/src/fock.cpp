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

#include "chiralpb/fock.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "chiralpb/errors.hpp"

namespace chiralpb {

FockSpace::FockSpace(int cutoff_cw, int cutoff_ccw) : cutoff_cw_(cutoff_cw), cutoff_ccw_(cutoff_ccw) {
  if (cutoff_cw < 1 || cutoff_ccw < 1)
    throw InvalidParams("photon cutoffs must be >= 1");
  const auto a = static_cast<std::size_t>(cutoff_cw) + 1;
  const auto b = static_cast<std::size_t>(cutoff_ccw) + 1;
  // The Liouvillian needs dim^2 rows, indexed by Eigen's int.
  const auto limit = static_cast<std::size_t>(std::sqrt(double(std::numeric_limits<int>::max())));
  if (a > limit / b) throw InvalidParams("Fock space dimension overflows");
  dim_ = a * b;
}

std::size_t FockSpace::index(int m, int n) const {
  if (m < 0 || m > cutoff_cw_ || n < 0 || n > cutoff_ccw_)
    throw DimensionMismatch("occupation outside truncation");
  return static_cast<std::size_t>(m) * static_cast<std::size_t>(cutoff_ccw_ + 1) +
         static_cast<std::size_t>(n);
}

std::pair<int, int> FockSpace::occupation(std::size_t flat) const {
  if (flat >= dim_) throw DimensionMismatch("flat index outside Fock space");
  const auto b = static_cast<std::size_t>(cutoff_ccw_ + 1);
  return {static_cast<int>(flat / b), static_cast<int>(flat % b)};
}

FockSpace build_space(int cutoff_cw, int cutoff_ccw) { return FockSpace(cutoff_cw, cutoff_ccw); }

// --- SparseComplexMatrix ----------------------------------------------------

SparseComplexMatrix::SparseComplexMatrix(Storage storage) : m_(std::move(storage)) {
  m_.makeCompressed();
}

SparseComplexMatrix SparseComplexMatrix::from_entries(std::size_t rows, std::size_t cols,
                                                      const std::vector<Entry>& entries) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) throw DimensionMismatch("entry outside matrix bounds");
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
      throw InvalidParams("non-finite matrix entry");
    triplets.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
  }
  Storage m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  bool duplicate = false;
  m.setFromTriplets(triplets.begin(), triplets.end(), [&](const Complex& a, const Complex& b) {
    duplicate = true;
    return a + b;
  });
  if (duplicate) throw InvalidParams("duplicate (row, col) entry");
  return SparseComplexMatrix(std::move(m));
}

SparseComplexMatrix SparseComplexMatrix::identity(std::size_t n) {
  Storage m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.setIdentity();
  return SparseComplexMatrix(std::move(m));
}

SparseComplexMatrix SparseComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return SparseComplexMatrix(Storage(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
}

Complex SparseComplexMatrix::coeff(std::size_t row, std::size_t col) const {
  if (row >= rows() || col >= cols()) throw DimensionMismatch("coefficient outside matrix bounds");
  return m_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

std::vector<Entry> SparseComplexMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(nonzeros());
  for (Eigen::Index r = 0; r < m_.outerSize(); ++r)
    for (Storage::InnerIterator it(m_, r); it; ++it)
      if (it.value() != Complex(0.0))
        out.push_back({static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()), it.value()});
  return out;
}

Eigen::VectorXcd SparseComplexMatrix::apply(const Eigen::VectorXcd& x) const {
  if (static_cast<std::size_t>(x.size()) != cols()) throw DimensionMismatch("apply: vector length");
  return m_ * x;
}

bool SparseComplexMatrix::operator==(const SparseComplexMatrix& other) const {
  if (rows() != other.rows() || cols() != other.cols()) return false;
  const auto a = entries();
  const auto b = other.entries();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].row != b[i].row || a[i].col != b[i].col || a[i].value != b[i].value) return false;
  return true;
}

// --- operator algebra --------------------------------------------------------

namespace {

SparseComplexMatrix single_mode_annihilation(int cutoff) {
  std::vector<Entry> e;
  for (int k = 1; k <= cutoff; ++k)
    e.push_back({static_cast<std::size_t>(k - 1), static_cast<std::size_t>(k), Complex(std::sqrt(double(k)))});
  const auto n = static_cast<std::size_t>(cutoff) + 1;
  return SparseComplexMatrix::from_entries(n, n, e);
}

void require_same_shape(const SparseComplexMatrix& a, const SparseComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(what) + ": shape mismatch");
}

}  // namespace

SparseComplexMatrix annihilation(const FockSpace& space, Mode mode) {
  const auto a = single_mode_annihilation(space.cutoff(mode));
  const auto id = SparseComplexMatrix::identity(static_cast<std::size_t>(space.levels(other(mode))));
  return mode == Mode::Cw ? kron(a, id) : kron(id, a);
}

SparseComplexMatrix number_op(const FockSpace& space, Mode mode) {
  const auto a = annihilation(space, mode);
  return compose(adjoint(a), a);
}

SparseComplexMatrix compose(const SparseComplexMatrix& a, const SparseComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("compose: inner dimensions differ");
  return SparseComplexMatrix(SparseComplexMatrix::Storage(a.eigen() * b.eigen()));
}

SparseComplexMatrix adjoint(const SparseComplexMatrix& a) {
  return SparseComplexMatrix(SparseComplexMatrix::Storage(a.eigen().adjoint()));
}

SparseComplexMatrix transpose(const SparseComplexMatrix& a) {
  return SparseComplexMatrix(SparseComplexMatrix::Storage(a.eigen().transpose()));
}

SparseComplexMatrix conjugate(const SparseComplexMatrix& a) {
  return SparseComplexMatrix(SparseComplexMatrix::Storage(a.eigen().conjugate()));
}

SparseComplexMatrix add_scaled(const SparseComplexMatrix& a, Complex alpha, const SparseComplexMatrix& b) {
  require_same_shape(a, b, "add_scaled");
  return SparseComplexMatrix(SparseComplexMatrix::Storage(a.eigen() + alpha * b.eigen()));
}

SparseComplexMatrix scale(Complex alpha, const SparseComplexMatrix& a) {
  return SparseComplexMatrix(SparseComplexMatrix::Storage(alpha * a.eigen()));
}

SparseComplexMatrix kron(const SparseComplexMatrix& a, const SparseComplexMatrix& b) {
  SparseComplexMatrix::Storage out = Eigen::kroneckerProduct(a.eigen(), b.eigen());
  return SparseComplexMatrix(std::move(out));
}

SparseComplexMatrix normal_ordered_power(const FockSpace& space, Mode mode, int k) {
  const auto a = annihilation(space, mode);
  const auto ad = adjoint(a);
  auto lowered = SparseComplexMatrix::identity(space.dim());
  auto raised = SparseComplexMatrix::identity(space.dim());
  for (int i = 0; i < k; ++i) {
    lowered = compose(a, lowered);
    raised = compose(raised, ad);
  }
  return compose(raised, lowered);
}

void write_triplets(const std::string& path, const SparseComplexMatrix& a) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  const auto entries = a.entries();
  out << "# " << a.rows() << ' ' << a.cols() << ' ' << entries.size() << '\n';
  char buf[128];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%zu %zu %.17g %.17g\n", e.row, e.col, e.value.real(), e.value.imag());
    out << buf;
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

SparseComplexMatrix read_triplets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string hash;
  std::size_t rows = 0, cols = 0, count = 0;
  if (!(in >> hash >> rows >> cols >> count) || hash != "#")
    throw IoError("'" + path + "': malformed triplet header");
  std::vector<Entry> entries;
  entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Entry e{};
    double re = 0, im = 0;
    if (!(in >> e.row >> e.col >> re >> im)) throw IoError("'" + path + "': truncated triplet list");
    e.value = Complex(re, im);
    entries.push_back(e);
  }
  return SparseComplexMatrix::from_entries(rows, cols, entries);
}

}  // namespace chiralpb
