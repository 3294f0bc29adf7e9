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

// Episodes, replications and delta sweeps.

#ifndef UBANDIT_SIM_HPP_
#define UBANDIT_SIM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ubandit/env.hpp"
#include "ubandit/instance.hpp"
#include "ubandit/markov.hpp"
#include "ubandit/policies.hpp"

namespace ubandit {

/// Cumulative regret of one replication. Entry t (0-based) covers the first
/// t + 1 ticks.
struct RegretTrace {
  std::string policy_name;
  double delta = 0.0;
  std::int64_t replication = 0;
  VectorXd cum_realized;  // (t+1) mu* - sum of observed rewards
  VectorXd cum_pseudo;    // sum of (mu* - mu of the visited arm)
};

struct ChainSpec {
  enum class Kind { kExplicit, kRandom };

  Kind kind = Kind::kRandom;
  RowMatrixd matrix;                  // kExplicit
  std::optional<std::uint64_t> seed;  // kRandom; defaults to the root seed
  double concentration = 1.0;         // kRandom
};

struct ArmsSpec {
  enum class Kind { kExplicit, kLinear };

  Kind kind = Kind::kLinear;
  std::vector<ArmSpec> arms;  // kExplicit
  // kLinear: means from high down to low, all of family `reward`.
  RewardKind reward = RewardKind::kBernoulli;
  double high = 0.95;
  double low = 0.05;
  double scale = 0.0;
};

struct ExperimentConfig {
  Index k = 10;
  std::int64_t horizon = 1000;
  std::vector<double> deltas{0.3};
  std::int64_t replications = 200;
  std::uint64_t seed = 1;
  ChainSpec chain;
  ArmsSpec arms;
  std::vector<PolicySpec> policies;
  StartRule start;
  std::string output_dir = ".";
};

/// Throws ValidationError naming the offending field.
void validate(const ExperimentConfig& config);

/// The chain and arms a config describes, plus the unperturbed stationary
/// distribution used for stationary starts.
struct ResolvedInstance {
  TransitionMatrixd chain;
  RewardModel rewards;
  StationaryDistributiond nu;
};

ResolvedInstance resolve_instance(const ExperimentConfig& config);

/// Seed of replication `rep`; identical for every policy and delta.
std::uint64_t replication_seed(std::uint64_t root, std::int64_t rep);

RegretTrace run_episode(const ResolvedInstance& instance, std::int64_t horizon,
                        StartRule start, const PolicySpec& policy,
                        double delta, std::uint64_t seed);

RegretTrace run_episode(const ExperimentConfig& config,
                        const PolicySpec& policy, double delta,
                        std::uint64_t seed);

/// Mean and standard error (sample std / sqrt(n)) over replications.
struct AggregateCurve {
  std::string policy_name;
  double delta = 0.0;
  std::int64_t replications = 0;
  VectorXd mean_realized;
  VectorXd se_realized;
  VectorXd mean_pseudo;
  VectorXd se_pseudo;

  double final_mean_realized() const { return mean_realized[mean_realized.size() - 1]; }
  double final_se_realized() const { return se_realized[se_realized.size() - 1]; }
  double final_mean_pseudo() const { return mean_pseudo[mean_pseudo.size() - 1]; }
  double final_se_pseudo() const { return se_pseudo[se_pseudo.size() - 1]; }
};

/// Traces must share policy, delta and length. Summation runs in the order
/// given.
AggregateCurve aggregate(std::span<const RegretTrace> traces);

struct CellFailure {
  std::string policy_name;
  double delta;
  std::int64_t replication;
  std::string message;
};

struct RunOptions {
  enum class Schedule { kForward, kReverse, kShuffled };

  unsigned workers = 1;  // 0: one per hardware thread
  bool keep_traces = true;
  Schedule schedule = Schedule::kForward;
  std::uint64_t shuffle_seed = 0;
};

struct ExperimentResult {
  std::vector<AggregateCurve> curves;  // policy-major, then delta
  std::vector<RegretTrace> traces;     // same order, then replication
  std::vector<CellFailure> failures;
};

/// Every (policy, delta, replication) cell. A failing cell is reported in
/// `failures` and left out of its curve; the rest still count.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const RunOptions& options = {});

struct SweepRow {
  double delta;
  std::string policy_name;
  std::int64_t replications;
  double mean_realized;
  double se_realized;
  double mean_pseudo;
  double se_pseudo;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // delta-major, then policy
  std::vector<CellFailure> failures;
};

/// Final-horizon regret for each delta in the config (at least two), same
/// instance and seed ladder throughout.
SweepResult sweep_delta(const ExperimentConfig& config,
                        const RunOptions& options = {});

}  // namespace ubandit

#endif  // UBANDIT_SIM_HPP_
