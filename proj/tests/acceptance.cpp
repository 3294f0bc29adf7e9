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

// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ubandit/bounds.hpp"
#include "ubandit/cli.hpp"
#include "ubandit/instance.hpp"
#include "ubandit/io.hpp"
#include "ubandit/rng.hpp"
#include "ubandit/sim.hpp"

using namespace ubandit;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* name;
  double time_limit_s;  // 0: none stated
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double joint_se(double a, double b) { return std::sqrt(a * a + b * b); }

const AggregateCurve& curve(const ExperimentResult& r, const std::string& name,
                            double delta) {
  for (const auto& c : r.curves) {
    if (c.policy_name == name && c.delta == delta) return c;
  }
  throw Error("no curve for " + name);
}

// The fixed K = 10 instance: Dirichlet(1) rows from chain seed 1, Bernoulli
// means 0.95 .. 0.05, root seed 1.
ExperimentConfig desk_config(std::int64_t horizon, std::int64_t reps,
                             std::vector<double> deltas,
                             std::vector<PolicySpec> policies) {
  ExperimentConfig c;
  c.k = 10;
  c.horizon = horizon;
  c.replications = reps;
  c.deltas = std::move(deltas);
  c.seed = 1;
  c.chain.kind = ChainSpec::Kind::kRandom;
  c.chain.seed = 1;
  c.arms.kind = ArmsSpec::Kind::kLinear;
  c.policies = std::move(policies);
  return c;
}

const PolicySpec kGenie{PolicyKind::kGenie, "genie"};
const PolicySpec kP2ee{PolicyKind::kP2ee, "p2ee", 0.1};
const PolicySpec kUcb{PolicyKind::kUcb, "ucb"};
const PolicySpec kGreedy{PolicyKind::kGreedy, "greedy"};

Outcome two_state_anchor() {
  ExperimentConfig c;
  c.k = 2;
  c.horizon = 5000;
  c.replications = 200;
  c.deltas = {0.3};
  c.seed = 1;
  c.chain.kind = ChainSpec::Kind::kExplicit;
  c.chain.matrix = RowMatrixd::Constant(2, 2, 0.5);
  c.arms.kind = ArmsSpec::Kind::kExplicit;
  c.arms.arms = {{RewardKind::kBernoulli, 1.0, 0.0}, {RewardKind::kBernoulli, 0.0, 0.0}};
  c.policies = {kGenie};
  const auto res = run_experiment(c);
  const auto& cv = curve(res, "genie", 0.3);
  const double per_step = cv.final_mean_pseudo() / 5000.0;
  const double se = cv.final_se_pseudo() / 5000.0;
  const double target = 0.2;
  return {std::abs(per_step - target) <= 3.0 * se,
          fmt("genie pseudo-regret/T = %.6f, target %.6f, |diff| = %.2e, 3 SE = %.2e",
              per_step, target, std::abs(per_step - target), 3.0 * se)};
}

Outcome single_target_optimality() {
  const auto cases = theorem1_cases(100, 1);
  int holds = 0;
  std::string misses;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto t = theorem1_table(cases[i].chain, cases[i].means, cases[i].delta);
    if (t.holds()) {
      ++holds;
    } else {
      misses += fmt(" [case %zu: K=%ld delta=%.1f best target %ld (%.6f) vs best arm %ld (%.6f)]",
                    i, static_cast<long>(cases[i].chain.size()), cases[i].delta,
                    static_cast<long>(t.best_target) + 1, t.values[t.best_target],
                    static_cast<long>(t.expected_target) + 1,
                    t.values[t.expected_target]);
    }
  }
  return {holds == 100, fmt("%d/100 instances hold", holds) + misses};
}

Outcome delta_trend() {
  const std::vector<double> deltas{0.1, 0.3, 0.5};
  const auto res = run_experiment(desk_config(5000, 500, deltas, {kGenie, kP2ee}),
                                  {.workers = 0, .keep_traces = false});
  bool ok = true;
  std::string detail;
  for (const char* name : {"genie", "p2ee"}) {
    detail += std::string(name) + ":";
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      const auto& c = curve(res, name, deltas[i]);
      detail += fmt(" C(%.1f)=%.1f+-%.1f", deltas[i], c.final_mean_realized(),
                    c.final_se_realized());
      if (i == 0) continue;
      const auto& prev = curve(res, name, deltas[i - 1]);
      const double drop = prev.final_mean_realized() - c.final_mean_realized();
      const double need = 2.0 * joint_se(prev.final_se_realized(), c.final_se_realized());
      ok = ok && drop >= need;
      detail += fmt(" (drop %.1f vs 2 joint SE %.1f)", drop, need);
    }
    detail += "; ";
  }
  return {ok, detail};
}

Outcome policy_ordering() {
  const auto res = run_experiment(desk_config(10000, 200, {0.3}, {kGenie, kP2ee, kUcb}),
                                  {.workers = 0, .keep_traces = false});
  const auto& g = curve(res, "genie", 0.3);
  const auto& p = curve(res, "p2ee", 0.3);
  const auto& u = curve(res, "ucb", 0.3);
  const double cg = g.final_mean_realized(), cp = p.final_mean_realized(),
               cu = u.final_mean_realized();
  const bool near_genie = cg <= cp && cp <= 1.25 * cg;
  const double margin = cu - cp;
  const double need = 2.0 * joint_se(p.final_se_realized(), u.final_se_realized());
  const bool beats_ucb = margin >= need;
  return {near_genie && beats_ucb,
          fmt("genie=%.1f+-%.1f p2ee=%.1f+-%.1f ucb=%.1f+-%.1f; "
              "genie<=p2ee<=1.25*genie: %s (ratio %.3f); "
              "ucb-p2ee=%.1f vs 2 joint SE %.1f: %s",
              cg, g.final_se_realized(), cp, p.final_se_realized(), cu,
              u.final_se_realized(), near_genie ? "yes" : "NO", cp / cg, margin,
              need, beats_ucb ? "yes" : "NO")};
}

Outcome stationary_suite() {
  double worst_residual = 0, worst_sum = 0, worst_agree = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Index k = 2 + static_cast<Index>(i % 9);
    const auto p = random_transition_matrix(k, derive_seed(5, i));
    const auto nu = stationary_distribution(p);
    worst_residual = std::max(worst_residual, stationary_residual(p, nu.probs()));
    worst_sum = std::max(worst_sum, std::abs(nu.probs().sum() - 1.0));
    const VectorXd lin = solve_stationary_linear(p);
    const VectorXd pow = solve_stationary_power(p);
    worst_agree = std::max(worst_agree, (lin - pow).lpNorm<Eigen::Infinity>());
  }
  return {worst_residual <= 1e-10 && worst_sum <= 1e-12 && worst_agree <= 1e-8,
          fmt("max residual %.2e (<=1e-10), max |sum-1| %.2e (<=1e-12), "
              "max |linear-power| %.2e (<=1e-8)",
              worst_residual, worst_sum, worst_agree)};
}

Outcome perturbation_suite() {
  Rng rng(6);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst_sum = 0;
  bool in_range = true, monotone = true, two_state_exact = true;
  int two_state_checked = 0, extremes = 0;
  for (int i = 0; i < 1000; ++i) {
    const Index k = 2 + static_cast<Index>(i % 9);
    const auto p = random_transition_matrix(k, rng());
    const auto target = static_cast<Index>(rng() % static_cast<std::uint64_t>(k));
    const double delta = i % 10 == 0 ? 0.0 : i % 10 == 1 ? 1.0 : unif(rng);
    extremes += (delta == 0.0 || delta == 1.0);
    const auto q = perturb_toward(p, Perturbationd(delta, target));
    for (Index r = 0; r < k; ++r) {
      worst_sum = std::max(worst_sum, std::abs(q.row(r).sum() - 1.0));
      in_range = in_range && q.row(r).minCoeff() >= 0.0 && q.row(r).maxCoeff() <= 1.0;
      monotone = monotone && q(r, target) >= p(r, target);
    }
    if (k == 2) {
      const Index other = 1 - target;
      if (delta <= p(0, other) && delta <= p(1, other)) {
        ++two_state_checked;
        for (Index r = 0; r < 2; ++r) {
          two_state_exact = two_state_exact &&
                            q(r, target) == p(r, target) + delta &&
                            q(r, other) == p(r, other) - delta;
        }
      }
    }
  }
  return {worst_sum <= 1e-12 && in_range && monotone && two_state_exact &&
              two_state_checked > 0,
          fmt("max |row sum-1| %.2e, entries in [0,1]: %s, target column >= input: %s, "
              "two-state shifted matrix exact in %d/%d untruncated cases; %d extreme deltas",
              worst_sum, in_range ? "yes" : "NO", monotone ? "yes" : "NO",
              two_state_exact ? two_state_checked : 0, two_state_checked, extremes)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(UBANDIT_TEST_TMPDIR) / "determinism";
  fs::create_directories(dir);
  const auto cfg = (dir / "config.json").string();
  {
    std::FILE* f = std::fopen(cfg.c_str(), "w");
    std::fputs(R"({"k": 10, "horizon": 500, "delta": [0.1, 0.3], "replications": 20,
      "seed": 1, "chain": {"type": "random", "seed": 1}, "arms": {"type": "linear"},
      "policies": ["genie", {"kind": "p2ee", "alpha": 0.1}, "ucb", "greedy", "noop"]})",
               f);
    std::fclose(f);
  }
  std::ostringstream sink;
  for (const char* run : {"a", "b"}) {
    const int code = cli_dispatch({"ubandit", "simulate", cfg, "--seed", "42", "--out",
                                   (dir / run).string(), "--quiet"},
                                  sink, sink);
    if (code != kExitOk) return {false, "simulate failed: " + sink.str()};
  }
  bool files_equal = true;
  for (const char* f : {"results.csv", "curves.csv", "regret.svg"}) {
    files_equal = files_equal &&
                  read_file((dir / "a" / f).string()) == read_file((dir / "b" / f).string());
  }

  auto config = load_config(cfg);
  const auto base = run_experiment(config, {.keep_traces = false});
  bool aggregates_equal = true;
  for (auto schedule : {RunOptions::Schedule::kReverse, RunOptions::Schedule::kShuffled}) {
    RunOptions o{.workers = 4, .keep_traces = false, .schedule = schedule, .shuffle_seed = 9};
    const auto other = run_experiment(config, o);
    aggregates_equal = aggregates_equal && other.curves.size() == base.curves.size();
    for (std::size_t i = 0; aggregates_equal && i < base.curves.size(); ++i) {
      const auto &x = base.curves[i], &y = other.curves[i];
      aggregates_equal = x.mean_realized == y.mean_realized &&
                         x.se_realized == y.se_realized &&
                         x.mean_pseudo == y.mean_pseudo && x.se_pseudo == y.se_pseudo;
    }
  }
  return {files_equal && aggregates_equal,
          fmt("CSV/SVG byte-identical across runs: %s; aggregates bit-identical under "
              "reversed and shuffled schedules: %s",
              files_equal ? "yes" : "NO", aggregates_equal ? "yes" : "NO")};
}

Outcome realized_vs_pseudo() {
  const auto res = run_experiment(desk_config(2000, 500, {0.3}, {kGenie}));
  const auto n = static_cast<double>(res.traces.size());
  double sum = 0, sq = 0;
  for (const auto& tr : res.traces) {
    const double d = tr.cum_realized[1999] - tr.cum_pseudo[1999];
    sum += d;
    sq += d * d;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sq - n * mean * mean) / (n - 1.0) / n);
  return {std::abs(mean) <= 3.0 * se,
          fmt("mean(realized - pseudo) = %.3f, 3 SE = %.3f over %.0f replications", mean,
              3.0 * se, n)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "two-state lower-bound anchor", 10.0, two_state_anchor},
      {"AC2", "single-target optimality, 100 instances", 5.0, single_target_optimality},
      {"AC3", "regret decreases with delta", 120.0, delta_trend},
      {"AC4", "P2EE near genie and below UCB", 120.0, policy_ordering},
      {"AC5", "stationary solver properties", 0.0, stationary_suite},
      {"AC6", "perturbation properties", 0.0, perturbation_suite},
      {"AC7", "determinism", 0.0, determinism},
      {"AC8", "realized/pseudo consistency", 0.0, realized_vs_pseudo},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += fmt(" [over time limit %.0fs]", c.time_limit_s);
    }
    failed += !o.pass;
    std::printf("[%s] %s %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
