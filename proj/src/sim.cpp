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

#include "ubandit/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <thread>
#include <utility>

#include "ubandit/rng.hpp"

namespace ubandit {

namespace {

std::string policy_label(const PolicySpec& spec) {
  return spec.name.empty() ? std::string(to_string(spec.kind)) : spec.name;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

void validate(const ExperimentConfig& c) {
  require(c.k >= 2, "k: must be >= 2, got " + std::to_string(c.k));
  require(c.horizon >= 1,
          "horizon: must be >= 1, got " + std::to_string(c.horizon));
  require(c.replications >= 1, "replications: must be >= 1, got " +
                                   std::to_string(c.replications));
  require(!c.deltas.empty(), "delta: at least one value required");
  for (double d : c.deltas) {
    require(d >= 0.0 && d <= 1.0,
            "delta: " + std::to_string(d) + " is outside [0, 1]");
  }
  require(!c.policies.empty(), "policies: at least one policy required");
  std::set<std::string> names;
  for (const auto& p : c.policies) {
    require(names.insert(policy_label(p)).second,
            "policies: duplicate name \"" + policy_label(p) + "\"");
    require(p.alpha >= 0.0 && p.alpha <= 1.0,
            "policies.alpha: " + std::to_string(p.alpha) +
                " is outside [0, 1]");
  }
  if (c.chain.kind == ChainSpec::Kind::kExplicit) {
    require(c.chain.matrix.rows() == c.k && c.chain.matrix.cols() == c.k,
            "chain.matrix: expected " + std::to_string(c.k) + "x" +
                std::to_string(c.k));
  } else {
    require(c.chain.concentration > 0.0,
            "chain.concentration: must be positive");
  }
  if (c.arms.kind == ArmsSpec::Kind::kExplicit) {
    require(static_cast<Index>(c.arms.arms.size()) == c.k,
            "arms.list: expected " + std::to_string(c.k) + " arms, got " +
                std::to_string(c.arms.arms.size()));
  }
  if (c.start.kind == StartRule::Kind::kFixed) {
    require(c.start.state >= 0 && c.start.state < c.k,
            "start.fixed: state out of range");
  }
}

ResolvedInstance resolve_instance(const ExperimentConfig& c) {
  validate(c);
  TransitionMatrixd chain =
      c.chain.kind == ChainSpec::Kind::kExplicit
          ? validate_matrix(c.chain.matrix)
          : random_transition_matrix(c.k, c.chain.seed.value_or(c.seed),
                                     c.chain.concentration);
  std::vector<ArmSpec> arms = c.arms.arms;
  if (c.arms.kind == ArmsSpec::Kind::kLinear) {
    arms.clear();
    for (double m : linear_means(c.k, c.arms.high, c.arms.low)) {
      arms.push_back({c.arms.reward, m, c.arms.scale});
    }
  }
  RewardModel rewards(std::move(arms));
  auto nu = stationary_distribution(chain);
  return {std::move(chain), std::move(rewards), std::move(nu)};
}

std::uint64_t replication_seed(std::uint64_t root, std::int64_t rep) {
  return derive_seed(root, static_cast<std::uint64_t>(rep));
}

RegretTrace run_episode(const ResolvedInstance& instance, std::int64_t horizon,
                        StartRule start, const PolicySpec& spec, double delta,
                        std::uint64_t seed) {
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  const TransitionMatrixd& chain = instance.chain;
  const RewardModel& rewards = instance.rewards;
  const VectorXd means = rewards.true_means();
  const double mu_star = rewards.best_mean();

  Policy policy(spec, rewards, delta, horizon);
  EnvState env = init_env(instance.nu, rewards, seed, start);
  std::vector<std::optional<TransitionMatrixd>> biased(
      static_cast<std::size_t>(chain.size()));

  RegretTrace trace{policy_label(spec), delta, 0, VectorXd(horizon),
                    VectorXd(horizon)};
  double realized = 0.0;
  double pseudo = 0.0;
  for (std::int64_t t = 0; t < horizon; ++t) {
    const TransitionMatrixd* effective = &chain;
    if (const auto decision = policy.decide()) {
      auto& slot = biased.at(static_cast<std::size_t>(decision->target));
      if (!slot) {
        slot = perturb_toward(chain,
                              Perturbationd(decision->delta, decision->target));
      }
      effective = &*slot;
    }
    const Observation obs = step(env, *effective, rewards);
    policy.observe(obs);
    realized += mu_star - obs.reward;
    pseudo += mu_star - means[obs.arm];
    trace.cum_realized[t] = realized;
    trace.cum_pseudo[t] = pseudo;
  }
  return trace;
}

RegretTrace run_episode(const ExperimentConfig& config, const PolicySpec& policy,
                        double delta, std::uint64_t seed) {
  return run_episode(resolve_instance(config), config.horizon, config.start,
                     policy, delta, seed);
}

AggregateCurve aggregate(std::span<const RegretTrace> traces) {
  if (traces.empty()) throw ValidationError("aggregate: no traces");
  const auto& first = traces.front();
  const Index len = first.cum_pseudo.size();
  for (const auto& tr : traces) {
    if (tr.cum_pseudo.size() != len || tr.cum_realized.size() != len) {
      throw ShapeError("aggregate: traces differ in length");
    }
    if (tr.policy_name != first.policy_name || tr.delta != first.delta) {
      throw ValidationError("aggregate: traces mix policies or deltas");
    }
  }
  const auto n = static_cast<double>(traces.size());
  AggregateCurve out{first.policy_name, first.delta,
                     static_cast<std::int64_t>(traces.size()),
                     VectorXd::Zero(len), VectorXd::Zero(len),
                     VectorXd::Zero(len), VectorXd::Zero(len)};
  for (const auto& tr : traces) {
    out.mean_realized += tr.cum_realized;
    out.mean_pseudo += tr.cum_pseudo;
  }
  out.mean_realized /= n;
  out.mean_pseudo /= n;
  if (traces.size() > 1) {
    for (const auto& tr : traces) {
      out.se_realized += (tr.cum_realized - out.mean_realized).cwiseAbs2();
      out.se_pseudo += (tr.cum_pseudo - out.mean_pseudo).cwiseAbs2();
    }
    const double scale = 1.0 / ((n - 1.0) * n);  // var / n
    out.se_realized = (out.se_realized * scale).cwiseSqrt();
    out.se_pseudo = (out.se_pseudo * scale).cwiseSqrt();
  }
  return out;
}

namespace {

std::vector<std::size_t> make_schedule(std::size_t n, const RunOptions& o) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  switch (o.schedule) {
    case RunOptions::Schedule::kForward: break;
    case RunOptions::Schedule::kReverse:
      std::reverse(order.begin(), order.end());
      break;
    case RunOptions::Schedule::kShuffled: {
      Rng rng(o.shuffle_seed);
      std::shuffle(order.begin(), order.end(), rng);
      break;
    }
  }
  return order;
}

// Runs every replication of one (policy, delta) group. Slots are indexed by
// replication, so the schedule and worker count do not affect the result.
void run_group(const ExperimentConfig& config, const ResolvedInstance& inst,
               const PolicySpec& spec, double delta, const RunOptions& options,
               ExperimentResult& result) {
  const auto reps = static_cast<std::size_t>(config.replications);
  std::vector<std::optional<RegretTrace>> slots(reps);
  std::vector<std::string> errors(reps);
  const auto order = make_schedule(reps, options);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < reps; i = next++) {
      const std::size_t rep = order[i];
      try {
        auto trace = run_episode(inst, config.horizon, config.start, spec,
                                 delta, replication_seed(config.seed,
                                                         static_cast<std::int64_t>(rep)));
        trace.replication = static_cast<std::int64_t>(rep);
        slots[rep] = std::move(trace);
      } catch (const std::exception& e) {
        errors[rep] = e.what();
      }
    }
  };

  unsigned workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, reps));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<RegretTrace> done;
  done.reserve(reps);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    if (slots[rep]) {
      done.push_back(std::move(*slots[rep]));
    } else {
      result.failures.push_back({policy_label(spec), delta,
                                 static_cast<std::int64_t>(rep), errors[rep]});
    }
  }
  if (done.empty()) return;
  result.curves.push_back(aggregate(done));
  if (options.keep_traces) {
    std::move(done.begin(), done.end(), std::back_inserter(result.traces));
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const RunOptions& options) {
  const ResolvedInstance inst = resolve_instance(config);
  ExperimentResult result;
  for (const auto& spec : config.policies) {
    for (double delta : config.deltas) {
      run_group(config, inst, spec, delta, options, result);
    }
  }
  return result;
}

SweepResult sweep_delta(const ExperimentConfig& config,
                        const RunOptions& options) {
  if (config.deltas.size() < 2) {
    throw ValidationError("delta: a sweep needs at least 2 values, got " +
                          std::to_string(config.deltas.size()));
  }
  RunOptions opts = options;
  opts.keep_traces = false;
  ExperimentResult res = run_experiment(config, opts);

  SweepResult out;
  out.failures = std::move(res.failures);
  for (double delta : config.deltas) {
    for (const auto& spec : config.policies) {
      const std::string name = policy_label(spec);
      for (const auto& c : res.curves) {
        if (c.policy_name != name || c.delta != delta) continue;
        out.rows.push_back({delta, name, c.replications,
                            c.final_mean_realized(), c.final_se_realized(),
                            c.final_mean_pseudo(), c.final_se_pseudo()});
        break;
      }
    }
  }
  return out;
}

}  // namespace ubandit
