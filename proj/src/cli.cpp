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

#include "ubandit/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "ubandit/bounds.hpp"
#include "ubandit/io.hpp"
#include "ubandit/plot.hpp"
#include "ubandit/sim.hpp"

namespace ubandit {

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool quiet = false;
  unsigned workers = 0;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string g12(double v) { return fmt("%.12g", v); }

ExperimentConfig load(const Flags& f) {
  ExperimentConfig c = load_config(f.config_path);
  if (f.seed) c.seed = *f.seed;
  if (f.out_dir) c.output_dir = *f.out_dir;
  return c;
}

std::filesystem::path prepare_out(const ExperimentConfig& c) {
  std::filesystem::path dir(c.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void report_failures(const std::vector<CellFailure>& failures, std::ostream& err) {
  for (const auto& f : failures) {
    err << "cell failed: policy=" << f.policy_name << " delta=" << g12(f.delta)
        << " rep=" << f.replication << ": " << f.message << '\n';
  }
}

int cmd_simulate(const Flags& f, std::ostream& out, std::ostream& err) {
  const ExperimentConfig c = load(f);
  RunOptions opts;
  opts.workers = f.workers;
  const ExperimentResult res = run_experiment(c, opts);
  const auto dir = prepare_out(c);
  if (!res.traces.empty()) {
    write_results(res.traces, (dir / "results.csv").string());
    write_curves(res.curves, (dir / "curves.csv").string());
    emit_plot(res.curves, (dir / "regret.svg").string());
  }
  if (!f.quiet) {
    const ResolvedInstance inst = resolve_instance(c);
    out << "policy,delta,replications,mean_C_T,se_C_T,mean_pseudo,se_pseudo,"
           "lower_bound\n";
    for (const auto& cv : res.curves) {
      const auto b = regret_lower_bound(inst.chain, inst.rewards, cv.delta, c.horizon);
      out << cv.policy_name << ',' << g12(cv.delta) << ',' << cv.replications << ','
          << g12(cv.final_mean_realized()) << ',' << g12(cv.final_se_realized())
          << ',' << g12(cv.final_mean_pseudo()) << ',' << g12(cv.final_se_pseudo())
          << ',' << g12(b.bound_at_T) << '\n';
    }
    out << "wrote " << (dir / "results.csv").string() << ", "
        << (dir / "curves.csv").string() << ", " << (dir / "regret.svg").string()
        << '\n';
  }
  report_failures(res.failures, err);
  return res.failures.empty() ? kExitOk : kExitFailure;
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream& err) {
  const ExperimentConfig c = load(f);
  RunOptions opts;
  opts.workers = f.workers;
  const SweepResult res = sweep_delta(c, opts);
  const auto dir = prepare_out(c);
  if (!res.rows.empty()) {
    write_sweep(res.rows, (dir / "sweep.csv").string());
    emit_sweep_plot(res.rows, (dir / "sweep.svg").string());
  }
  if (!f.quiet) {
    out << kSweepHeader << '\n';
    for (const auto& r : res.rows) {
      out << g12(r.delta) << ',' << r.policy_name << ',' << r.replications << ','
          << g12(r.mean_realized) << ',' << g12(r.se_realized) << ','
          << g12(r.mean_pseudo) << ',' << g12(r.se_pseudo) << '\n';
    }
    out << "wrote " << (dir / "sweep.csv").string() << ", "
        << (dir / "sweep.svg").string() << '\n';
  }
  report_failures(res.failures, err);
  return res.failures.empty() ? kExitOk : kExitFailure;
}

void print_vector(std::ostream& out, const VectorXd& v) {
  for (Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << g12(v[i]);
}

int cmd_bound(const Flags& f, std::ostream& out, std::ostream&) {
  const ExperimentConfig c = load(f);
  const ResolvedInstance inst = resolve_instance(c);
  for (double delta : c.deltas) {
    const auto b = regret_lower_bound(inst.chain, inst.rewards, delta, c.horizon);
    out << "delta        " << g12(delta) << '\n'
        << "target       arm " << b.target + 1 << '\n'
        << "mu_star      " << g12(b.mu_star) << '\n'
        << "mu_tilde     " << g12(b.mu_tilde) << '\n'
        << "gap          " << g12(b.per_step_gap) << '\n'
        << "horizon      " << b.horizon << '\n'
        << "bound        " << g12(b.bound_at_T) << '\n'
        << "nu_delta     ";
    print_vector(out, b.nu_delta.probs());
    out << "\n\n";
  }
  return kExitOk;
}

int cmd_stationary(const Flags& f, std::ostream& out, std::ostream&) {
  const ExperimentConfig c = load(f);
  const ResolvedInstance inst = resolve_instance(c);
  const Index target = inst.rewards.best_arm();
  out << "nu                 ";
  print_vector(out, inst.nu.probs());
  out << "\ntarget             arm " << target + 1 << '\n';
  for (double delta : c.deltas) {
    const auto nu_d = stationary_distribution(
        perturb_toward(inst.chain, Perturbationd(delta, target)));
    out << "nu_delta[" << g12(delta) << "]" << std::string(
               std::max<std::size_t>(1, 9 - g12(delta).size()), ' ');
    print_vector(out, nu_d.probs());
    out << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream&) {
  const ExperimentConfig c = load(f);
  const ResolvedInstance inst = resolve_instance(c);
  bool all_hold = true;
  for (double delta : c.deltas) {
    const auto table = theorem1_table(inst.chain, inst.rewards.true_means(), delta);
    out << "delta " << g12(delta) << "\n  target  mean_reward\n";
    for (Index l = 0; l < table.values.size(); ++l) {
      out << "  " << l + 1 << std::string(l + 1 < 10 ? 7 : 6, ' ')
          << g12(table.values[l]) << (l == table.best_target ? "  *" : "") << '\n';
    }
    out << "  best target arm " << table.best_target + 1 << ", best arm arm "
        << table.expected_target + 1 << ": "
        << (table.holds() ? "holds" : "VIOLATED") << "\n";
    all_hold = all_hold && table.holds();
  }
  return all_hold ? kExitOk : kExitFailure;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"Bandits acting through a perturbable Markov-chain intermediate",
               args.empty() ? "ubandit" : args.front()};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  std::uint64_t seed = 0;
  std::string out_dir;
  auto* seed_opt = app.add_option("--seed", seed, "Override the config's root seed");
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--quiet", flags.quiet, "Print nothing on success");
  app.add_option("--workers", flags.workers,
                 "Worker threads for replications (0 = all cores)");

  using Handler = int (*)(const Flags&, std::ostream&, std::ostream&);
  const std::pair<const char*, Handler> commands[] = {
      {"simulate", cmd_simulate},     {"sweep", cmd_sweep},
      {"bound", cmd_bound},           {"stationary", cmd_stationary},
      {"verify-theorem1", cmd_verify}};
  const char* descriptions[] = {
      "Run every policy and write results.csv, curves.csv, regret.svg",
      "Sweep delta and write sweep.csv, sweep.svg",
      "Print the regret lower bound for each delta",
      "Print the stationary distribution with and without the genie bias",
      "Check that biasing toward the best arm is the best single target"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    sub->add_option("config", flags.config_path, "Experiment config (JSON)")
        ->required();
    subs.push_back(sub);
  }

  std::vector<const char*> argv;
  argv.push_back(args.empty() ? "ubandit" : args.front().c_str());
  for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;  // --help
    if (args.size() <= 1) err << app.help();
    return kExitUsage;
  }
  if (*seed_opt) flags.seed = seed;
  if (*out_opt) flags.out_dir = out_dir;

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) return commands[i].second(flags, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ubandit
