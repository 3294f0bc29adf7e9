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

#include "ubandit/env.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ubandit {

RewardModel::RewardModel(std::vector<ArmSpec> arms) : arms_(std::move(arms)) {
  if (arms_.size() < 2) {
    throw ValidationError("reward model needs at least 2 arms, got " +
                          std::to_string(arms_.size()));
  }
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    const ArmSpec& a = arms_[i];
    const std::string where = "arm " + std::to_string(i) + ": ";
    if (!std::isfinite(a.mean)) {
      throw ValidationError(where + "mean must be finite");
    }
    switch (a.kind) {
      case RewardKind::kBernoulli:
        if (a.mean < 0.0 || a.mean > 1.0) {
          throw ValidationError(where + "Bernoulli mean " +
                                std::to_string(a.mean) + " is outside [0, 1]");
        }
        break;
      case RewardKind::kGaussian:
        if (!(a.scale >= 0.0) || !std::isfinite(a.scale)) {
          throw ValidationError(where + "Gaussian scale must be >= 0");
        }
        break;
    }
  }
}

RewardModel RewardModel::bernoulli(const std::vector<double>& means) {
  std::vector<ArmSpec> arms;
  arms.reserve(means.size());
  for (double m : means) arms.push_back({RewardKind::kBernoulli, m, 0.0});
  return RewardModel(std::move(arms));
}

VectorXd RewardModel::true_means() const {
  VectorXd mu(size());
  for (Index i = 0; i < size(); ++i) mu[i] = true_mean(i);
  return mu;
}

double RewardModel::best_mean() const { return true_mean(best_arm()); }

Index RewardModel::best_arm() const {
  Index best = 0;
  for (Index i = 1; i < size(); ++i) {
    if (true_mean(i) > true_mean(best)) best = i;
  }
  return best;
}

double sample_reward(const RewardModel& rewards, Index arm, Rng& rng) {
  const ArmSpec& a = rewards.arm(arm);
  switch (a.kind) {
    case RewardKind::kBernoulli: {
      std::bernoulli_distribution d(a.mean);
      return d(rng) ? 1.0 : 0.0;
    }
    case RewardKind::kGaussian: {
      if (a.scale == 0.0) return a.mean;
      std::normal_distribution<double> d(a.mean, a.scale);
      return d(rng);
    }
  }
  return a.mean;
}

namespace {

void check_arm_count(Index states, const RewardModel& rewards) {
  if (states != rewards.size()) {
    throw ShapeError("chain has " + std::to_string(states) +
                     " states but reward model has " +
                     std::to_string(rewards.size()) + " arms");
  }
}

EnvState fixed_start(Index states, std::uint64_t seed, Index state) {
  if (state < 0 || state >= states) {
    throw IndexError("start state " + std::to_string(state) + " out of range");
  }
  return EnvState{state, 0, Rng(seed)};
}

}  // namespace

EnvState init_env(const StationaryDistributiond& nu, const RewardModel& rewards,
                  std::uint64_t seed, StartRule start) {
  check_arm_count(nu.size(), rewards);
  if (start.kind == StartRule::Kind::kFixed) {
    return fixed_start(nu.size(), seed, start.state);
  }
  EnvState env{0, 0, Rng(seed)};
  env.current_state = sample_categorical(nu.probs(), env.rng);
  return env;
}

EnvState init_env(const TransitionMatrixd& p, const RewardModel& rewards,
                  std::uint64_t seed, StartRule start) {
  check_arm_count(p.size(), rewards);
  if (start.kind == StartRule::Kind::kFixed) {
    return fixed_start(p.size(), seed, start.state);
  }
  return init_env(stationary_distribution(p), rewards, seed, start);
}

Observation step(EnvState& env, const TransitionMatrixd& effective,
                 const RewardModel& rewards) {
  const Index next = sample_categorical(effective.row(env.current_state), env.rng);
  Observation obs{next, sample_reward(rewards, next, env.rng), env.t};
  env.current_state = next;
  ++env.t;
  return obs;
}

}  // namespace ubandit
