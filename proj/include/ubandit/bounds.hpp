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

// Stationary regret lower bound for the genie policy, and the exhaustive
// check that biasing toward the best arm is the best single-target policy.

#ifndef UBANDIT_BOUNDS_HPP_
#define UBANDIT_BOUNDS_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "ubandit/env.hpp"
#include "ubandit/markov.hpp"

namespace ubandit {

/// First index of the maximum; entries within `tie_tolerance` of the
/// maximum count as ties.
template <typename Derived>
Index argmax_lowest(const Eigen::MatrixBase<Derived>& v,
                    typename Derived::Scalar tie_tolerance = 0) {
  const auto top = v.maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] >= top - tie_tolerance) return i;
  }
  return 0;
}

template <typename Scalar>
struct BoundReport {
  Index target;          // arm the genie biases toward
  Scalar mu_star;
  Scalar mu_tilde;       // nu_delta . mu
  Scalar per_step_gap;   // mu_star - mu_tilde
  std::int64_t horizon;
  Scalar bound_at_T;     // horizon * per_step_gap
  StationaryDistribution<Scalar> nu_delta;
};

/// E[C_T] >= T (mu* - mu~), with mu~ the mean reward under the stationary
/// distribution of P biased toward the best arm.
template <typename Scalar, typename Derived>
BoundReport<Scalar> regret_lower_bound(const TransitionMatrix<Scalar>& p,
                                       const Eigen::MatrixBase<Derived>& means,
                                       Scalar delta, std::int64_t horizon) {
  if (means.size() != p.size()) {
    throw ShapeError("reward vector has " + std::to_string(means.size()) +
                     " entries for " + std::to_string(p.size()) + " states");
  }
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  const Vector<Scalar> mu = means.template cast<Scalar>();
  const Index target = argmax_lowest(mu);
  auto nu = stationary_distribution(
      perturb_toward(p, Perturbation<Scalar>(delta, target)));
  const Scalar mu_star = mu[target];
  const Scalar mu_tilde = nu.expectation(mu);
  const Scalar gap = std::max(Scalar(0), mu_star - mu_tilde);
  return BoundReport<Scalar>{target,  mu_star, mu_tilde,
                             gap,     horizon, Scalar(horizon) * gap,
                             std::move(nu)};
}

inline BoundReport<double> regret_lower_bound(const TransitionMatrixd& p,
                                              const RewardModel& rewards,
                                              double delta,
                                              std::int64_t horizon) {
  return regret_lower_bound(p, rewards.true_means(), delta, horizon);
}

/// Long-run mean reward of every single-target policy.
template <typename Scalar>
struct Theorem1Table {
  Index best_target;      // argmax over values
  Index expected_target;  // argmax over the true means
  Vector<Scalar> values;  // values[l] = nu^(l) . mu

  bool holds() const { return best_target == expected_target; }
};

/// Values closer than this are treated as equal when picking best_target.
inline constexpr double kTheorem1TieTolerance = 1e-12;

template <typename Scalar, typename Derived>
Theorem1Table<Scalar> theorem1_table(const TransitionMatrix<Scalar>& p,
                                     const Eigen::MatrixBase<Derived>& means,
                                     Scalar delta) {
  if (means.size() != p.size()) {
    throw ShapeError("reward vector has " + std::to_string(means.size()) +
                     " entries for " + std::to_string(p.size()) + " states");
  }
  const Vector<Scalar> mu = means.template cast<Scalar>();
  Vector<Scalar> values(p.size());
  for (Index l = 0; l < p.size(); ++l) {
    values[l] = stationary_distribution(
                    perturb_toward(p, Perturbation<Scalar>(delta, l)))
                    .expectation(mu);
  }
  return {argmax_lowest(values, Scalar(kTheorem1TieTolerance)),
          argmax_lowest(mu), std::move(values)};
}

/// Thrown when some other target beats the best arm. Carries the table.
class TheoremViolation : public Error {
 public:
  explicit TheoremViolation(Theorem1Table<double> table)
      : Error("target " + std::to_string(table.best_target) +
              " beats the best arm " + std::to_string(table.expected_target)),
        table_(std::move(table)) {}

  const Theorem1Table<double>& table() const { return table_; }

 private:
  Theorem1Table<double> table_;
};

/// theorem1_table, throwing TheoremViolation when the best single-target
/// policy is not the one aimed at argmax mu.
template <typename Derived>
Theorem1Table<double> verify_theorem1(const TransitionMatrixd& p,
                                      const Eigen::MatrixBase<Derived>& means,
                                      double delta) {
  auto table = theorem1_table(p, means, delta);
  if (!table.holds()) throw TheoremViolation(std::move(table));
  return table;
}

inline Theorem1Table<double> verify_theorem1(const TransitionMatrixd& p,
                                             const RewardModel& rewards,
                                             double delta) {
  return verify_theorem1(p, rewards.true_means(), delta);
}

}  // namespace ubandit

#endif  // UBANDIT_BOUNDS_HPP_
