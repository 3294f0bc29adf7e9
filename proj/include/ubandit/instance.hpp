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

// Seeded random problem instances.

#ifndef UBANDIT_INSTANCE_HPP_
#define UBANDIT_INSTANCE_HPP_

#include <cstdint>
#include <vector>

#include "ubandit/env.hpp"
#include "ubandit/markov.hpp"

namespace ubandit {

/// K x K matrix whose rows are independent Dirichlet(concentration) draws.
TransitionMatrixd random_transition_matrix(Index k, std::uint64_t seed,
                                           double concentration = 1.0);

/// k means linearly spaced from `high` down to `low` (decreasing in i).
std::vector<double> linear_means(Index k, double high = 0.95,
                                 double low = 0.05);

struct Instance {
  TransitionMatrixd chain;
  RewardModel rewards;
};

/// Random Dirichlet(1) chain with Bernoulli arms at linear_means(k).
Instance desk_instance(Index k, std::uint64_t seed);

struct Theorem1Case {
  TransitionMatrixd chain;
  VectorXd means;
  double delta;
};

/// `count` seeded cases for the single-target optimality check: case i has
/// K = 2 + i % 4, delta 0.1 or 0.3 alternating every four cases, a
/// Dirichlet(1) chain seeded from (root, i), and linear means.
std::vector<Theorem1Case> theorem1_cases(std::size_t count, std::uint64_t root);

}  // namespace ubandit

#endif  // UBANDIT_INSTANCE_HPP_
