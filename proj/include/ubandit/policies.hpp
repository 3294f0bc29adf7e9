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

// Perturbation policies. Each one maps what has been observed so far to the
// state the chain is biased toward on the next tick.
//
// Ties are broken toward the lowest index everywhere.

#ifndef UBANDIT_POLICIES_HPP_
#define UBANDIT_POLICIES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ubandit/env.hpp"
#include "ubandit/markov.hpp"

namespace ubandit {

using Counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

struct BiasDecision {
  BiasDecision(Index target_, double delta_);

  Index target;
  double delta;
};

enum class Phase { kExplore, kCommit };

/// What a learning policy remembers: visit counts and reward sums per arm.
struct PolicyState {
  explicit PolicyState(Index arms)
      : pulls(Counts::Zero(arms)), reward_sums(VectorXd::Zero(arms)) {}

  Index size() const { return pulls.size(); }
  /// reward_sums[i] / pulls[i], or nothing for an unvisited arm.
  std::optional<double> empirical_mean(Index i) const;

  Counts pulls;
  VectorXd reward_sums;
  std::int64_t t = 0;
  Phase phase = Phase::kExplore;          // P2EE only
  std::optional<Index> committed_arm;     // P2EE only
};

/// Records one observation. Throws IndexError for an arm outside the state.
void update(PolicyState& state, const Observation& obs);

/// Bias toward the arm with the highest true mean. Needs the genie.
BiasDecision genie_target(const RewardModel& rewards, double delta);

/// Number of explore ticks for fraction alpha of the horizon: ceil(alpha T).
std::int64_t explore_length(double alpha, std::int64_t horizon);

/// Explore-commit: while t < explore_len, bias toward the least-visited arm;
/// at the boundary freeze the empirical best visited arm and bias toward it
/// from then on. Mutates `state` (phase and committed_arm) at the boundary.
/// Throws NoDataError if the boundary is reached with nothing observed.
BiasDecision p2ee_target(PolicyState& state, std::int64_t explore_len,
                         double delta);

/// UCB1 index mean_i + sqrt(2 ln t / pulls_i); unvisited arms come first.
BiasDecision ucb_target(const PolicyState& state, double delta);

/// Empirical argmax over visited arms, no random exploration (the chain
/// explores on its own). Arm 0 when nothing has been visited.
BiasDecision greedy_target(const PolicyState& state, double delta);

/// Leaves the chain alone.
std::optional<BiasDecision> noop_target();

enum class PolicyKind { kGenie, kP2ee, kUcb, kGreedy, kNoop };

std::string_view to_string(PolicyKind kind);
/// Accepts "genie", "p2ee", "ucb", "greedy", "noop".
std::optional<PolicyKind> parse_policy_kind(std::string_view name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::kGenie;
  std::string name;    // label in outputs; defaults to the kind
  double alpha = 0.1;  // P2EE explore fraction
};

/// A policy bound to one episode: decision rule plus its own state.
class Policy {
 public:
  Policy(const PolicySpec& spec, const RewardModel& rewards, double delta,
         std::int64_t horizon);

  /// Target for this tick, or nothing for the unperturbed chain.
  std::optional<BiasDecision> decide();
  void observe(const Observation& obs) { update(state_, obs); }

  const PolicyState& state() const { return state_; }
  PolicyKind kind() const { return kind_; }

 private:
  PolicyKind kind_;
  double delta_;
  std::int64_t explore_len_ = 0;
  std::optional<BiasDecision> genie_;
  PolicyState state_;
};

}  // namespace ubandit

#endif  // UBANDIT_POLICIES_HPP_
