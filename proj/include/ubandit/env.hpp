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

// Arms, reward draws and the stepped environment. At every tick the
// intermediate moves one step along the (possibly perturbed) chain and the
// arm it lands on emits a reward.

#ifndef UBANDIT_ENV_HPP_
#define UBANDIT_ENV_HPP_

#include <cstdint>
#include <vector>

#include "ubandit/markov.hpp"
#include "ubandit/rng.hpp"

namespace ubandit {

enum class RewardKind { kBernoulli, kGaussian };

struct ArmSpec {
  RewardKind kind = RewardKind::kBernoulli;
  double mean = 0.0;
  double scale = 0.0;  // standard deviation, Gaussian only
};

/// Per-arm reward distributions. The true means are for the genie policy,
/// the bound computation and pseudo-regret accounting; learning policies
/// only ever see a PolicyState.
class RewardModel {
 public:
  explicit RewardModel(std::vector<ArmSpec> arms);

  static RewardModel bernoulli(const std::vector<double>& means);

  Index size() const { return static_cast<Index>(arms_.size()); }
  const ArmSpec& arm(Index i) const { return arms_.at(static_cast<std::size_t>(i)); }
  const std::vector<ArmSpec>& arms() const { return arms_; }

  double true_mean(Index i) const { return arm(i).mean; }
  VectorXd true_means() const;
  /// mu*.
  double best_mean() const;
  /// argmax of the true means, lowest index on ties.
  Index best_arm() const;

 private:
  std::vector<ArmSpec> arms_;
};

/// One i.i.d. draw from arm `arm`.
double sample_reward(const RewardModel& rewards, Index arm, Rng& rng);

/// Where the walk starts: a draw from the unperturbed stationary
/// distribution, or a fixed state.
struct StartRule {
  enum class Kind { kStationary, kFixed };

  static StartRule stationary() { return {}; }
  static StartRule fixed(Index state) { return {Kind::kFixed, state}; }

  Kind kind = Kind::kStationary;
  Index state = 0;
};

struct EnvState {
  Index current_state = 0;
  std::int64_t t = 0;
  Rng rng;
};

struct Observation {
  Index arm = 0;
  double reward = 0.0;
  std::int64_t t = 0;
};

EnvState init_env(const TransitionMatrixd& p, const RewardModel& rewards,
                  std::uint64_t seed, StartRule start);

/// Same as above with the unperturbed stationary distribution precomputed.
EnvState init_env(const StationaryDistributiond& nu, const RewardModel& rewards,
                  std::uint64_t seed, StartRule start);

/// Draws an index from a probability row. Zero-probability entries are
/// never returned.
template <typename Derived>
Index sample_categorical(const Eigen::DenseBase<Derived>& probs, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  double cum = 0.0;
  Index last_positive = 0;
  for (Index j = 0; j < probs.size(); ++j) {
    const double pj = probs[j];
    if (pj <= 0.0) continue;
    cum += pj;
    last_positive = j;
    if (u < cum) return j;
  }
  return last_positive;
}

/// Advances the walk one tick under `effective` and draws the reward of the
/// arm that was visited.
Observation step(EnvState& env, const TransitionMatrixd& effective,
                 const RewardModel& rewards);

}  // namespace ubandit

#endif  // UBANDIT_ENV_HPP_
