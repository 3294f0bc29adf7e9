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

#include "ubandit/policies.hpp"

#include <cmath>
#include <limits>

namespace ubandit {

BiasDecision::BiasDecision(Index target_, double delta_)
    : target(target_), delta(delta_) {
  if (target < 0) throw IndexError("bias target must be non-negative");
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw RangeError("delta " + std::to_string(delta) + " is outside [0, 1]");
  }
}

std::optional<double> PolicyState::empirical_mean(Index i) const {
  if (pulls[i] == 0) return std::nullopt;
  return reward_sums[i] / static_cast<double>(pulls[i]);
}

void update(PolicyState& state, const Observation& obs) {
  if (obs.arm < 0 || obs.arm >= state.size()) {
    throw IndexError("observed arm " + std::to_string(obs.arm) +
                     " out of range for " + std::to_string(state.size()) +
                     " arms");
  }
  state.pulls[obs.arm] += 1;
  state.reward_sums[obs.arm] += obs.reward;
  state.t += 1;
}

BiasDecision genie_target(const RewardModel& rewards, double delta) {
  return BiasDecision(rewards.best_arm(), delta);
}

std::int64_t explore_length(double alpha, std::int64_t horizon) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw RangeError("explore fraction " + std::to_string(alpha) +
                     " is outside [0, 1]");
  }
  return static_cast<std::int64_t>(
      std::ceil(alpha * static_cast<double>(horizon)));
}

namespace {

std::optional<Index> best_visited(const PolicyState& state) {
  std::optional<Index> best;
  double best_mean = 0.0;
  for (Index i = 0; i < state.size(); ++i) {
    const auto m = state.empirical_mean(i);
    if (!m) continue;
    if (!best || *m > best_mean) {
      best = i;
      best_mean = *m;
    }
  }
  return best;
}

}  // namespace

BiasDecision p2ee_target(PolicyState& state, std::int64_t explore_len,
                         double delta) {
  if (state.phase == Phase::kExplore && state.t < explore_len) {
    Index least = 0;
    state.pulls.minCoeff(&least);  // first minimum
    return BiasDecision(least, delta);
  }
  if (state.phase == Phase::kExplore) {
    const auto best = best_visited(state);
    if (!best) {
      throw NoDataError("explore phase ended with no observations");
    }
    state.committed_arm = *best;
    state.phase = Phase::kCommit;
  }
  return BiasDecision(*state.committed_arm, delta);
}

BiasDecision ucb_target(const PolicyState& state, double delta) {
  for (Index i = 0; i < state.size(); ++i) {
    if (state.pulls[i] == 0) return BiasDecision(i, delta);
  }
  const double log_t = std::log(static_cast<double>(state.t));
  Index best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < state.size(); ++i) {
    const double n = static_cast<double>(state.pulls[i]);
    const double index = state.reward_sums[i] / n + std::sqrt(2.0 * log_t / n);
    if (index > best_index) {
      best = i;
      best_index = index;
    }
  }
  return BiasDecision(best, delta);
}

BiasDecision greedy_target(const PolicyState& state, double delta) {
  return BiasDecision(best_visited(state).value_or(0), delta);
}

std::optional<BiasDecision> noop_target() { return std::nullopt; }

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kGenie: return "genie";
    case PolicyKind::kP2ee: return "p2ee";
    case PolicyKind::kUcb: return "ucb";
    case PolicyKind::kGreedy: return "greedy";
    case PolicyKind::kNoop: return "noop";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  for (PolicyKind k : {PolicyKind::kGenie, PolicyKind::kP2ee, PolicyKind::kUcb,
                       PolicyKind::kGreedy, PolicyKind::kNoop}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

Policy::Policy(const PolicySpec& spec, const RewardModel& rewards, double delta,
               std::int64_t horizon)
    : kind_(spec.kind), delta_(delta), state_(rewards.size()) {
  // Validates delta up front for every kind.
  BiasDecision(0, delta);
  if (kind_ == PolicyKind::kGenie) genie_ = genie_target(rewards, delta);
  if (kind_ == PolicyKind::kP2ee) {
    explore_len_ = explore_length(spec.alpha, horizon);
  }
}

std::optional<BiasDecision> Policy::decide() {
  switch (kind_) {
    case PolicyKind::kGenie: return genie_;
    case PolicyKind::kP2ee: return p2ee_target(state_, explore_len_, delta_);
    case PolicyKind::kUcb: return ucb_target(state_, delta_);
    case PolicyKind::kGreedy: return greedy_target(state_, delta_);
    case PolicyKind::kNoop: return noop_target();
  }
  return std::nullopt;
}

}  // namespace ubandit
