// Copyright 2026 The ubandit Authors.
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

// Row-stochastic transition matrices, stationary distributions and the
// single-target perturbation operator.
//
// Everything here is header-only and templated on the scalar type. The
// library itself instantiates double; the aliases at the bottom of the file
// are what the rest of the code uses.

#ifndef UBANDIT_MARKOV_HPP_
#define UBANDIT_MARKOV_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ubandit/errors.hpp"

namespace ubandit {

using Index = Eigen::Index;

template <typename Scalar>
using RowMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Absolute tolerance on row sums (and on the sum of a distribution).
template <typename Scalar>
constexpr Scalar row_sum_tolerance() {
  return std::max(Scalar(1e-12),
                  Scalar(16) * std::numeric_limits<Scalar>::epsilon());
}

/// A validated K x K row-stochastic matrix (K >= 2). Immutable.
///
/// The only ways to obtain one are validate_matrix() and the operations in
/// this header, so holding a TransitionMatrix means the invariants hold:
/// every entry is in [0, 1] and every row sums to 1 within
/// row_sum_tolerance().
template <typename Scalar>
class TransitionMatrix {
 public:
  using MatrixType = RowMatrix<Scalar>;

  template <typename Derived>
  static TransitionMatrix validated(const Eigen::MatrixBase<Derived>& rows);

  Index size() const { return p_.rows(); }
  const MatrixType& matrix() const { return p_; }
  Scalar operator()(Index i, Index j) const { return p_(i, j); }
  auto row(Index i) const { return p_.row(i); }

  bool operator==(const TransitionMatrix& other) const {
    return p_ == other.p_;
  }

 private:
  explicit TransitionMatrix(MatrixType p) : p_(std::move(p)) {}

  template <typename S>
  friend TransitionMatrix<S> perturb_toward_unchecked(
      const TransitionMatrix<S>&, Index, S);

  MatrixType p_;
};

template <typename Scalar>
template <typename Derived>
TransitionMatrix<Scalar> TransitionMatrix<Scalar>::validated(
    const Eigen::MatrixBase<Derived>& rows) {
  if (rows.rows() != rows.cols()) {
    throw ShapeError("transition matrix must be square, got " +
                     std::to_string(rows.rows()) + "x" +
                     std::to_string(rows.cols()));
  }
  if (rows.rows() < 2) {
    throw ShapeError("transition matrix needs at least 2 states, got " +
                     std::to_string(rows.rows()));
  }
  MatrixType p = rows.template cast<Scalar>();
  for (Index i = 0; i < p.rows(); ++i) {
    for (Index j = 0; j < p.cols(); ++j) {
      const Scalar v = p(i, j);
      // Written so that NaN fails too.
      if (!(v >= Scalar(0) && v <= Scalar(1))) {
        throw RangeError("entry (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") = " + std::to_string(v) +
                         " is outside [0, 1]");
      }
    }
  }
  for (Index i = 0; i < p.rows(); ++i) {
    const Scalar s = p.row(i).sum();
    if (!(std::abs(s - Scalar(1)) <= row_sum_tolerance<Scalar>())) {
      throw RowSumError("row " + std::to_string(i) + " sums to " +
                            std::to_string(s) + ", expected 1",
                        static_cast<long>(i));
    }
  }
  return TransitionMatrix(std::move(p));
}

/// Validates raw values into a TransitionMatrix. Never renormalizes.
template <typename Derived>
TransitionMatrix<typename Derived::Scalar> validate_matrix(
    const Eigen::MatrixBase<Derived>& rows) {
  return TransitionMatrix<typename Derived::Scalar>::validated(rows);
}

/// Nested-vector overload used by the config loader; ragged input is a
/// ShapeError.
template <typename Scalar>
TransitionMatrix<Scalar> validate_matrix(
    const std::vector<std::vector<Scalar>>& rows) {
  const auto k = static_cast<Index>(rows.size());
  RowMatrix<Scalar> m(k, k);
  for (Index i = 0; i < k; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(r.size()) != k) {
      throw ShapeError("row " + std::to_string(i) + " has " +
                       std::to_string(r.size()) + " entries, expected " +
                       std::to_string(k));
    }
    for (Index j = 0; j < k; ++j) m(i, j) = r[static_cast<std::size_t>(j)];
  }
  return TransitionMatrix<Scalar>::validated(m);
}

/// Probability vector nu with nu P = nu.
template <typename Scalar>
class StationaryDistribution {
 public:
  /// Checks range and normalization; the fixed-point residual is checked by
  /// the solver that produced the vector.
  explicit StationaryDistribution(Vector<Scalar> probs)
      : probs_(std::move(probs)) {
    for (Index i = 0; i < probs_.size(); ++i) {
      if (!(probs_[i] >= Scalar(0) && probs_[i] <= Scalar(1))) {
        throw SolverError("stationary entry " + std::to_string(i) + " = " +
                          std::to_string(probs_[i]) + " is outside [0, 1]");
      }
    }
    if (!(std::abs(probs_.sum() - Scalar(1)) <= row_sum_tolerance<Scalar>())) {
      throw SolverError("stationary vector does not sum to 1");
    }
  }

  Index size() const { return probs_.size(); }
  const Vector<Scalar>& probs() const { return probs_; }
  Scalar operator[](Index i) const { return probs_[i]; }

  /// Long-run average of `values` under this distribution.
  template <typename Derived>
  Scalar expectation(const Eigen::MatrixBase<Derived>& values) const {
    return probs_.dot(values.template cast<Scalar>());
  }

 private:
  Vector<Scalar> probs_;
};

struct StationaryOptions {
  double residual_tolerance = 1e-10;  // on ||nu P - nu||_inf
  double power_tolerance = 1e-12;     // successive-iterate change, inf-norm
  long max_iterations = 1'000'000;
};

/// ||nu P - nu||_inf.
template <typename Scalar>
Scalar stationary_residual(const TransitionMatrix<Scalar>& p,
                           const Vector<Scalar>& nu) {
  return (p.matrix().transpose() * nu - nu).template lpNorm<Eigen::Infinity>();
}

namespace detail {

// Clamps round-off negatives and renormalizes.
template <typename Scalar>
Vector<Scalar> polish(Vector<Scalar> nu) {
  nu = nu.cwiseMax(Scalar(0));
  const Scalar s = nu.sum();
  if (!(s > Scalar(0))) throw SolverError("stationary vector collapsed to 0");
  return nu / s;
}

}  // namespace detail

/// Direct solve of (P^T - I) nu = 0 with the first equation replaced by
/// sum(nu) = 1. Throws SolverError when the chain has more than one
/// recurrent class (no unique normalized solution).
template <typename Scalar>
Vector<Scalar> solve_stationary_linear(const TransitionMatrix<Scalar>& p) {
  const Index k = p.size();
  RowMatrix<Scalar> a = p.matrix().transpose();
  a.diagonal().array() -= Scalar(1);
  a.row(0).setOnes();
  Vector<Scalar> b = Vector<Scalar>::Zero(k);
  b[0] = Scalar(1);
  Eigen::FullPivLU<RowMatrix<Scalar>> lu(a);
  if (!lu.isInvertible()) {
    throw SolverError(
        "stationary system is singular: chain has no unique stationary "
        "distribution");
  }
  return detail::polish<Scalar>(lu.solve(b));
}

/// Power iteration from the uniform vector on the lazy chain (P + I) / 2,
/// which has the same stationary distribution as P but is aperiodic.
template <typename Scalar>
Vector<Scalar> solve_stationary_power(const TransitionMatrix<Scalar>& p,
                                      const StationaryOptions& opts = {}) {
  const Index k = p.size();
  const RowMatrix<Scalar> lazy_t =
      (p.matrix().transpose() + RowMatrix<Scalar>::Identity(k, k)) /
      Scalar(2);
  Vector<Scalar> nu = Vector<Scalar>::Constant(k, Scalar(1) / Scalar(k));
  Vector<Scalar> next(k);
  for (long it = 0; it < opts.max_iterations; ++it) {
    next.noalias() = lazy_t * nu;
    next /= next.sum();
    const Scalar change = (next - nu).template lpNorm<Eigen::Infinity>();
    nu.swap(next);
    if (change <= Scalar(opts.power_tolerance)) return detail::polish(nu);
  }
  throw ConvergenceError("power iteration did not converge in " +
                         std::to_string(opts.max_iterations) + " iterations");
}

/// Stationary distribution of P: linear solve first, power iteration if the
/// direct answer misses the residual tolerance.
template <typename Scalar>
StationaryDistribution<Scalar> stationary_distribution(
    const TransitionMatrix<Scalar>& p, const StationaryOptions& opts = {}) {
  Vector<Scalar> nu = solve_stationary_linear(p);
  if (stationary_residual(p, nu) > Scalar(opts.residual_tolerance)) {
    nu = solve_stationary_power(p, opts);
    if (stationary_residual(p, nu) > Scalar(opts.residual_tolerance)) {
      throw ConvergenceError("stationary residual above tolerance");
    }
  }
  return StationaryDistribution<Scalar>(std::move(nu));
}

/// Magnitude delta in [0, 1] and the state the chain is biased toward.
template <typename Scalar>
struct Perturbation {
  Perturbation(Scalar delta_, Index target_) : delta(delta_), target(target_) {
    if (!(delta >= Scalar(0) && delta <= Scalar(1))) {
      throw RangeError("perturbation delta " + std::to_string(delta) +
                       " is outside [0, 1]");
    }
    if (target < 0) {
      throw IndexError("perturbation target " + std::to_string(target) +
                       " is negative");
    }
  }

  Scalar delta;
  Index target;
};

template <typename Scalar>
TransitionMatrix<Scalar> perturb_toward_unchecked(
    const TransitionMatrix<Scalar>& p, Index target, Scalar delta) {
  const Index k = p.size();
  RowMatrix<Scalar> out = p.matrix();
  for (Index i = 0; i < k; ++i) {
    // Off-target mass as a sum rather than 1 - p(i, target), so that with a
    // single off-target entry the ratio below is exactly 1.
    Scalar mass = 0;
    for (Index j = 0; j < k; ++j) {
      if (j != target) mass += p(i, j);
    }
    if (mass <= Scalar(0)) continue;
    if (delta >= mass) {
      out.row(i).setZero();
      out(i, target) = Scalar(1);
      continue;
    }
    for (Index j = 0; j < k; ++j) {
      if (j != target) out(i, j) = p(i, j) - delta * (p(i, j) / mass);
    }
    out(i, target) = p(i, target) + delta;
  }
  return TransitionMatrix<Scalar>(std::move(out));
}

/// Moves probability mass delta (truncated to what is available) in every
/// row onto the target column, taking it proportionally from the other
/// entries of that row.
///
/// For row i with off-target mass m_i, the shift is d_i = min(delta, m_i).
/// With K = 2 this is the familiar [[p11 - d, p12 + d], [p21 - d, p22 + d]].
template <typename Scalar>
TransitionMatrix<Scalar> perturb_toward(const TransitionMatrix<Scalar>& p,
                                        const Perturbation<Scalar>& pert) {
  if (pert.target >= p.size()) {
    throw IndexError("perturbation target " + std::to_string(pert.target) +
                     " out of range for " + std::to_string(p.size()) +
                     " states");
  }
  return perturb_toward_unchecked(p, pert.target, pert.delta);
}

/// perturb_toward for every target l = 0..K-1, in order.
template <typename Scalar>
std::vector<TransitionMatrix<Scalar>> perturb_all_targets(
    const TransitionMatrix<Scalar>& p, Scalar delta) {
  std::vector<TransitionMatrix<Scalar>> out;
  out.reserve(static_cast<std::size_t>(p.size()));
  for (Index l = 0; l < p.size(); ++l) {
    out.push_back(perturb_toward(p, Perturbation<Scalar>(delta, l)));
  }
  return out;
}

using TransitionMatrixd = TransitionMatrix<double>;
using StationaryDistributiond = StationaryDistribution<double>;
using Perturbationd = Perturbation<double>;
using RowMatrixd = RowMatrix<double>;
using VectorXd = Vector<double>;

}  // namespace ubandit

#endif  // UBANDIT_MARKOV_HPP_
