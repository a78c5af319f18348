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

#include "chiralpb/steadystate.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SparseLU>
#include <boost/numeric/odeint.hpp>

#include "chiralpb/errors.hpp"
#include "chiralpb/model.hpp"
#include "chiralpb/observables.hpp"

namespace chiralpb {

namespace {

using ColMajor = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
using Factorization = Eigen::SparseLU<ColMajor, Eigen::COLAMDOrdering<int>>;

void require_generator_shape(const SparseComplexMatrix& l, const FockSpace& space) {
  const auto n = space.dim() * space.dim();
  if (l.rows() != n || l.cols() != n)
    throw DimensionMismatch("Liouvillian is " + std::to_string(l.rows()) + "x" + std::to_string(l.cols()) +
                            ", expected " + std::to_string(n) + "x" + std::to_string(n));
}

double largest_diagonal(const SparseComplexMatrix& l) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < l.eigen().rows(); ++i) out = std::max(out, std::abs(l.eigen().coeff(i, i)));
  return out;
}

double resolve_unit(const std::optional<double>& unit, const SparseComplexMatrix& l) {
  const double u = unit ? *unit : largest_diagonal(l);
  if (!(std::isfinite(u) && u > 0.0)) throw InvalidParams("rate unit must be positive and finite");
  return u;
}

Eigen::VectorXcd seeded_vector(Eigen::Index n) {
  // Fixed seed keeps every solve reproducible.
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> dist;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(dist(rng), dist(rng));
  return v.normalized();
}

// Largest singular value by power iteration on M^H M.
double largest_singular_value(const ColMajor& m) {
  Eigen::VectorXcd v = seeded_vector(m.cols());
  double sigma = 0.0;
  for (int k = 0; k < 30; ++k) {
    Eigen::VectorXcd w = m.adjoint() * (m * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    const double next = std::sqrt(norm);
    v = w / norm;
    if (std::abs(next - sigma) <= 1e-6 * next) return next;
    sigma = next;
  }
  return sigma;
}

// Smallest singular value by inverse iteration on (M^H M)^{-1}, reusing the LU.
double smallest_singular_value(Factorization& lu, Eigen::Index n) {
  Eigen::VectorXcd v = seeded_vector(n);
  double sigma = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 12; ++k) {
    Eigen::VectorXcd y = lu.adjoint().solve(v);
    Eigen::VectorXcd w = lu.solve(y);
    const double norm = w.norm();
    if (!std::isfinite(norm) || norm == 0.0) return 0.0;
    const double next = 1.0 / std::sqrt(norm);
    v = w / norm;
    if (std::abs(next - sigma) <= 1e-4 * next) return next;
    sigma = next;
  }
  return sigma;
}

Eigen::VectorXcd solve_trace_row(const ColMajor& l, std::size_t dim, const SteadyOptions& options) {
  const auto n = l.rows();
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(l.nonZeros()) + dim);
  for (Eigen::Index c = 0; c < l.outerSize(); ++c)
    for (ColMajor::InnerIterator it(l, c); it; ++it)
      if (it.row() != 0) triplets.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  // Row 0 (the rho_00 equation) becomes tr(rho) = 1.
  for (std::size_t i = 0; i < dim; ++i)
    triplets.emplace_back(0, static_cast<int>(i + i * dim), Complex(1.0));
  ColMajor bordered(n, n);
  bordered.setFromTriplets(triplets.begin(), triplets.end());

  Factorization lu;
  lu.analyzePattern(bordered);
  lu.factorize(bordered);
  if (lu.info() != Eigen::Success)
    throw DegenerateSteadyState("steady state is not unique: bordered Liouvillian is singular (" +
                                lu.lastErrorMessage() + ")");

  const double sigma_max = largest_singular_value(l);
  const double sigma_min = smallest_singular_value(lu, n);
  if (sigma_min < options.degeneracy_threshold * sigma_max)
    throw DegenerateSteadyState("steady state is not unique: smallest singular value " + std::to_string(sigma_min) +
                                " vs largest " + std::to_string(sigma_max));

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs[0] = 1.0;
  Eigen::VectorXcd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw SolverNotConverged("sparse LU solve failed", -1.0);
  return x;
}

Complex trace_of(const Eigen::VectorXcd& x, std::size_t dim) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim; ++i) t += x[static_cast<Eigen::Index>(i + i * dim)];
  return t;
}

Eigen::VectorXcd inverse_iteration(Factorization& lu, Eigen::VectorXcd x, std::size_t dim) {
  double change = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    Eigen::VectorXcd y = lu.solve(x);
    const Complex t = trace_of(y, dim);
    if (std::abs(t) == 0.0 || !std::isfinite(std::abs(t)))
      throw SolverNotConverged("inverse iteration lost the trace", 0.0);
    y /= t;
    change = (y - x).norm() / y.norm();
    x = std::move(y);
    if (k >= 1 && change <= 1e-14) return x;
  }
  if (change <= 1e-10) return x;
  throw SolverNotConverged("inverse iteration did not converge", change);
}

Eigen::VectorXcd solve_inverse_power(const ColMajor& l, std::size_t dim, const SteadyOptions& options) {
  const auto n = l.rows();
  // Small negative shift: the zero eigenvalue is the one closest to it.
  constexpr double shift = -1e-6;
  ColMajor shifted = l;
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= shift;
  Factorization lu;
  lu.analyzePattern(shifted);
  lu.factorize(shifted);
  if (lu.info() != Eigen::Success) throw SolverNotConverged("shifted Liouvillian factorization failed", -1.0);

  // Two unrelated diagonal starting states must reach the same fixed point.
  Eigen::VectorXcd mixed = Eigen::VectorXcd::Zero(n), skewed = Eigen::VectorXcd::Zero(n);
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  double total = 0.0;
  std::vector<double> w(dim);
  for (auto& v : w) total += (v = weight(rng));
  for (std::size_t i = 0; i < dim; ++i) {
    mixed[static_cast<Eigen::Index>(i + i * dim)] = 1.0 / double(dim);
    skewed[static_cast<Eigen::Index>(i + i * dim)] = w[i] / total;
  }
  const Eigen::VectorXcd a = inverse_iteration(lu, mixed, dim);
  const Eigen::VectorXcd b = inverse_iteration(lu, skewed, dim);
  const double spread = (a - b).norm() / a.norm();
  if (spread > options.degeneracy_threshold)
    throw DegenerateSteadyState("steady state is not unique: inverse iteration from different starts differs by " +
                                std::to_string(spread));
  return a;
}

}  // namespace

double relative_residual(const SparseComplexMatrix& liouvillian, const DensityMatrix& state) {
  require_generator_shape(liouvillian, state.space);
  const Eigen::VectorXcd v = vectorize(state.rho);
  const double norm_l = std::sqrt(liouvillian.eigen().squaredNorm());
  const double denom = norm_l * v.norm();
  return denom > 0.0 ? liouvillian.apply(v).norm() / denom : 0.0;
}

DensityMatrix solve_steady(const SparseComplexMatrix& liouvillian, const FockSpace& space,
                           const SteadyOptions& options) {
  require_generator_shape(liouvillian, space);
  const double unit = resolve_unit(options.rate_unit, liouvillian);
  const ColMajor l = ColMajor(liouvillian.eigen()) / Complex(unit);
  const std::size_t dim = space.dim();

  SteadyMethod method = options.method;
  if (method == SteadyMethod::Auto)
    method = dim * dim > kInversePowerThreshold ? SteadyMethod::InversePower : SteadyMethod::TraceRow;
  const Eigen::VectorXcd x =
      method == SteadyMethod::TraceRow ? solve_trace_row(l, dim, options) : solve_inverse_power(l, dim, options);

  DensityMatrix state{space, unvectorize(x, dim), {}};
  const Complex trace = state.rho.trace();
  if (std::abs(trace) == 0.0 || !std::isfinite(std::abs(trace)))
    throw SolverNotConverged("steady state has zero or non-finite trace", std::abs(trace));
  state.rho /= trace;

  const double residual = relative_residual(liouvillian, state);
  if (!(residual <= options.residual_tolerance))
    throw SolverNotConverged("steady-state residual " + std::to_string(residual) + " above tolerance", residual);
  return state;
}

DensityMatrix evolve(const SparseComplexMatrix& liouvillian, const DensityMatrix& rho0, double t_final,
                     const EvolveOptions& options) {
  require_generator_shape(liouvillian, rho0.space);
  if (!(std::isfinite(t_final) && t_final >= 0.0)) throw InvalidParams("t_final must be finite and >= 0");
  if (t_final == 0.0) return rho0;

  const double unit = resolve_unit(options.rate_unit, liouvillian);
  const SparseComplexMatrix::Storage l = liouvillian.eigen() / Complex(unit);
  const double horizon = t_final * unit;

  using State = std::vector<Complex>;
  namespace odeint = boost::numeric::odeint;
  const Eigen::VectorXcd v0 = vectorize(rho0.rho);
  State x(v0.data(), v0.data() + v0.size());
  auto rhs = [&l](const State& in, State& out, double /*t*/) {
    out.resize(in.size());
    Eigen::Map<const Eigen::VectorXcd> vin(in.data(), static_cast<Eigen::Index>(in.size()));
    Eigen::Map<Eigen::VectorXcd> vout(out.data(), static_cast<Eigen::Index>(out.size()));
    vout.noalias() = l * vin;
  };
  auto stepper = odeint::make_controlled(options.atol, options.rtol, odeint::runge_kutta_dopri5<State>());

  double t = 0.0;
  double dt = std::min(1e-3, horizon);
  std::size_t steps = 0;
  while (horizon - t > 1e-14 * horizon) {
    if (++steps > options.max_steps)
      throw SolverNotConverged("time evolution exceeded " + std::to_string(options.max_steps) + " steps", t / unit);
    double trial = std::min(dt, horizon - t);
    const bool clipped = trial < dt;
    const auto result = stepper.try_step(rhs, x, t, trial);
    if (result == odeint::success) {
      // Keep the controller's suggestion unless the step was clipped to land on t_final.
      if (!clipped) dt = trial;
    } else {
      dt = trial;
      if (dt < options.min_step) throw StepSizeUnderflow("step size fell below " + std::to_string(options.min_step) +
                                                        "/rate at t = " + std::to_string(t / unit) + " s");
    }
  }

  DensityMatrix out{rho0.space,
                    unvectorize(Eigen::Map<const Eigen::VectorXcd>(x.data(), static_cast<Eigen::Index>(x.size())),
                                rho0.space.dim()),
                    rho0.params_hash};
  const double herm = (out.rho - out.rho.adjoint()).cwiseAbs().maxCoeff();
  const double drift = std::abs(out.rho.trace() - rho0.rho.trace());
  if (herm > 1e-8 || drift > 1e-8)
    throw SolverNotConverged("time evolution drifted (hermiticity " + std::to_string(herm) + ", trace " +
                                 std::to_string(drift) + ")",
                             std::max(herm, drift));
  return out;
}

ConvergenceReport convergence_check(const DerivedParams& d, const std::vector<int>& cutoffs, double threshold) {
  if (cutoffs.size() < 2) throw InvalidParams("convergence check needs at least two cutoffs");
  struct Snapshot {
    int cutoff;
    std::vector<std::pair<std::string, std::optional<double>>> values;
  };
  std::vector<Snapshot> snaps;
  for (int c : cutoffs) {
    const FockSpace space(c, c);
    const auto state = solve_steady(liouvillian(d, space), space, {.rate_unit = d.gamma});
    Snapshot s{c, {}};
    for (Mode mode : {Mode::Cw, Mode::Ccw}) {
      const std::string suffix = mode == Mode::Cw ? "_cw" : "_ccw";
      s.values.emplace_back("N" + suffix, mean_photon(state, mode));
      for (int order : {2, 3}) {
        std::optional<double> g;
        try {
          g = correlation(state, mode, order);
        } catch (const UndefinedCorrelation&) {
        }
        s.values.emplace_back("g" + std::to_string(order) + suffix, g);
      }
    }
    snaps.push_back(std::move(s));
  }

  ConvergenceReport report;
  report.threshold = threshold;
  report.pass = true;
  for (std::size_t i = 1; i < snaps.size(); ++i) {
    ConvergenceStep step{snaps[i - 1].cutoff, snaps[i].cutoff, {}, 0.0};
    for (std::size_t q = 0; q < snaps[i].values.size(); ++q) {
      ConvergenceQuantity cq{snaps[i].values[q].first, snaps[i - 1].values[q].second, snaps[i].values[q].second, 0.0};
      if (cq.coarse && cq.fine) {
        const double scale = std::max(std::abs(*cq.coarse), std::abs(*cq.fine));
        cq.relative_change = scale > 0.0 ? std::abs(*cq.fine - *cq.coarse) / scale : 0.0;
      } else if (cq.coarse.has_value() != cq.fine.has_value()) {
        cq.relative_change = std::numeric_limits<double>::infinity();
      }
      step.max_relative_change = std::max(step.max_relative_change, cq.relative_change);
      step.quantities.push_back(std::move(cq));
    }
    if (!(step.max_relative_change < threshold)) report.pass = false;
    report.steps.push_back(std::move(step));
  }
  return report;
}

}  // namespace chiralpb
