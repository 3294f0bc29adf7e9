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

#include "ubandit/instance.hpp"

#include <random>
#include <string>

#include "ubandit/rng.hpp"

namespace ubandit {

TransitionMatrixd random_transition_matrix(Index k, std::uint64_t seed,
                                           double concentration) {
  if (k < 2) throw ShapeError("need at least 2 states");
  if (!(concentration > 0.0)) {
    throw RangeError("Dirichlet concentration must be positive");
  }
  Rng rng(seed);
  std::gamma_distribution<double> gamma(concentration, 1.0);
  RowMatrixd m(k, k);
  for (Index i = 0; i < k; ++i) {
    double s = 0.0;
    do {
      for (Index j = 0; j < k; ++j) m(i, j) = gamma(rng);
      s = m.row(i).sum();
    } while (!(s > 0.0));
    m.row(i) /= s;
  }
  return validate_matrix(m);
}

std::vector<double> linear_means(Index k, double high, double low) {
  if (k < 2) throw ShapeError("need at least 2 arms");
  std::vector<double> mu(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    mu[static_cast<std::size_t>(i)] =
        high + (low - high) * static_cast<double>(i) / static_cast<double>(k - 1);
  }
  return mu;
}

Instance desk_instance(Index k, std::uint64_t seed) {
  return {random_transition_matrix(k, seed),
          RewardModel::bernoulli(linear_means(k))};
}

std::vector<Theorem1Case> theorem1_cases(std::size_t count,
                                         std::uint64_t root) {
  std::vector<Theorem1Case> cases;
  cases.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Index k = 2 + static_cast<Index>(i % 4);
    const double delta = (i / 4) % 2 == 0 ? 0.1 : 0.3;
    const auto mu = linear_means(k);
    cases.push_back({random_transition_matrix(k, derive_seed(root, i)),
                     Eigen::Map<const VectorXd>(mu.data(), k), delta});
  }
  return cases;
}

}  // namespace ubandit
