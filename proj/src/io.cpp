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

#include "ubandit/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace ubandit {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& key, const std::string& expected,
                          const json& actual) {
  throw ValidationError("key \"" + key + "\": expected " + expected + ", got " +
                        actual.dump());
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      throw ValidationError("unknown key \"" + join(path, key) + "\" (value " +
                            value.dump() + ")");
    }
  }
}

const json& require_object(const json& v, const std::string& key) {
  if (!v.is_object()) invalid(key, "an object", v);
  return v;
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& required(const json& obj, const std::string& path,
                     const std::string& key) {
  const json* v = find(obj, key);
  if (!v) throw ValidationError("missing required key \"" + join(path, key) + "\"");
  return *v;
}

std::int64_t as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) invalid(key, "an integer", v);
  if (v.is_number_unsigned() &&
      v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    invalid(key, "an integer in int64 range", v);
  }
  return v.get<std::int64_t>();
}

std::uint64_t as_u64(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  invalid(key, "a non-negative 64-bit integer", v);
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) invalid(key, "a number", v);
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) invalid(key, "a string", v);
  return v.get<std::string>();
}

double probability(const json& v, const std::string& key) {
  const double x = as_number(v, key);
  if (!(x >= 0.0 && x <= 1.0)) invalid(key, "a number in [0, 1]", v);
  return x;
}

RewardKind reward_kind(const json& v, const std::string& key) {
  const std::string s = as_string(v, key);
  if (s == "bernoulli") return RewardKind::kBernoulli;
  if (s == "gaussian") return RewardKind::kGaussian;
  invalid(key, "\"bernoulli\" or \"gaussian\"", v);
}

ChainSpec parse_chain(const json& v, Index k) {
  require_object(v, "chain");
  const std::string type = as_string(required(v, "chain", "type"), "chain.type");
  ChainSpec chain;
  if (type == "explicit") {
    reject_unknown(v, "chain", {"type", "matrix"});
    const json& m = required(v, "chain", "matrix");
    if (!m.is_array()) invalid("chain.matrix", "an array of rows", m);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::string key = "chain.matrix[" + std::to_string(i) + "]";
      if (!m[i].is_array()) invalid(key, "an array of numbers", m[i]);
      std::vector<double> row;
      for (std::size_t j = 0; j < m[i].size(); ++j) {
        row.push_back(as_number(m[i][j], key + "[" + std::to_string(j) + "]"));
      }
      rows.push_back(std::move(row));
    }
    if (static_cast<Index>(rows.size()) != k) {
      invalid("chain.matrix", std::to_string(k) + " rows", m);
    }
    try {
      chain.matrix = validate_matrix(rows).matrix();
    } catch (const RowSumError& e) {
      throw ValidationError("key \"chain.matrix[" + std::to_string(e.row()) +
                            "]\": row does not sum to 1: " +
                            m[static_cast<std::size_t>(e.row())].dump());
    } catch (const Error& e) {
      throw ValidationError(std::string("key \"chain.matrix\": ") + e.what());
    }
    chain.kind = ChainSpec::Kind::kExplicit;
  } else if (type == "random") {
    reject_unknown(v, "chain", {"type", "seed", "concentration"});
    chain.kind = ChainSpec::Kind::kRandom;
    if (const json* s = find(v, "seed")) chain.seed = as_u64(*s, "chain.seed");
    if (const json* c = find(v, "concentration")) {
      chain.concentration = as_number(*c, "chain.concentration");
      if (!(chain.concentration > 0.0)) {
        invalid("chain.concentration", "a positive number", *c);
      }
    }
  } else {
    invalid("chain.type", "\"explicit\" or \"random\"", v.at("type"));
  }
  return chain;
}

ArmsSpec parse_arms(const json& v) {
  require_object(v, "arms");
  const std::string type = as_string(required(v, "arms", "type"), "arms.type");
  ArmsSpec arms;
  if (type == "explicit") {
    reject_unknown(v, "arms", {"type", "list"});
    arms.kind = ArmsSpec::Kind::kExplicit;
    const json& list = required(v, "arms", "list");
    if (!list.is_array()) invalid("arms.list", "an array of arms", list);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "arms.list[" + std::to_string(i) + "]";
      const json& a = require_object(list[i], path);
      reject_unknown(a, path, {"kind", "mean", "scale"});
      ArmSpec arm;
      if (const json* kind = find(a, "kind")) arm.kind = reward_kind(*kind, path + ".kind");
      const std::string mean_key = path + ".mean";
      arm.mean = arm.kind == RewardKind::kBernoulli
                     ? probability(required(a, path, "mean"), mean_key)
                     : as_number(required(a, path, "mean"), mean_key);
      if (const json* s = find(a, "scale")) {
        arm.scale = as_number(*s, path + ".scale");
        if (!(arm.scale >= 0.0)) invalid(path + ".scale", "a number >= 0", *s);
      }
      arms.arms.push_back(arm);
    }
  } else if (type == "linear") {
    reject_unknown(v, "arms", {"type", "kind", "high", "low", "scale"});
    arms.kind = ArmsSpec::Kind::kLinear;
    if (const json* kind = find(v, "kind")) arms.reward = reward_kind(*kind, "arms.kind");
    const bool bern = arms.reward == RewardKind::kBernoulli;
    if (const json* h = find(v, "high")) {
      arms.high = bern ? probability(*h, "arms.high") : as_number(*h, "arms.high");
    }
    if (const json* l = find(v, "low")) {
      arms.low = bern ? probability(*l, "arms.low") : as_number(*l, "arms.low");
    }
    if (const json* s = find(v, "scale")) {
      arms.scale = as_number(*s, "arms.scale");
      if (!(arms.scale >= 0.0)) invalid("arms.scale", "a number >= 0", *s);
    }
  } else {
    invalid("arms.type", "\"explicit\" or \"linear\"", v.at("type"));
  }
  return arms;
}

PolicySpec parse_policy(const json& v, const std::string& path) {
  PolicySpec spec;
  const json* kind_value = &v;
  if (v.is_object()) {
    reject_unknown(v, path, {"kind", "name", "alpha"});
    kind_value = &required(v, path, "kind");
  } else if (!v.is_string()) {
    invalid(path, "a policy name or object", v);
  }
  const std::string kind_key = v.is_object() ? path + ".kind" : path;
  const auto kind = parse_policy_kind(as_string(*kind_value, kind_key));
  if (!kind) {
    invalid(kind_key, "one of genie, p2ee, ucb, greedy, noop", *kind_value);
  }
  spec.kind = *kind;
  if (v.is_object()) {
    if (const json* n = find(v, "name")) {
      spec.name = as_string(*n, path + ".name");
      if (spec.name.empty() ||
          spec.name.find_first_of(",\"\n\r") != std::string::npos) {
        invalid(path + ".name", "a non-empty name without commas, quotes or newlines", *n);
      }
    }
    if (const json* a = find(v, "alpha")) spec.alpha = probability(*a, path + ".alpha");
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) invalid("<root>", "an object", doc);
  reject_unknown(doc, "", {"k", "horizon", "delta", "replications", "seed",
                           "chain", "arms", "policies", "start", "output"});

  ExperimentConfig c;
  c.k = as_int(required(doc, "", "k"), "k");
  if (c.k < 2) invalid("k", "an integer >= 2", doc["k"]);
  c.horizon = as_int(required(doc, "", "horizon"), "horizon");
  if (c.horizon < 1) invalid("horizon", "an integer >= 1", doc["horizon"]);

  const json& delta = required(doc, "", "delta");
  c.deltas.clear();
  if (delta.is_array()) {
    if (delta.empty()) invalid("delta", "a non-empty list", delta);
    for (std::size_t i = 0; i < delta.size(); ++i) {
      c.deltas.push_back(probability(delta[i], "delta[" + std::to_string(i) + "]"));
    }
  } else {
    c.deltas.push_back(probability(delta, "delta"));
  }

  if (const json* r = find(doc, "replications")) {
    c.replications = as_int(*r, "replications");
    if (c.replications < 1) invalid("replications", "an integer >= 1", *r);
  }
  if (const json* s = find(doc, "seed")) c.seed = as_u64(*s, "seed");

  c.chain = parse_chain(required(doc, "", "chain"), c.k);
  c.arms = parse_arms(required(doc, "", "arms"));
  if (c.arms.kind == ArmsSpec::Kind::kExplicit &&
      static_cast<Index>(c.arms.arms.size()) != c.k) {
    invalid("arms.list", std::to_string(c.k) + " arms", doc["arms"]["list"]);
  }

  const json& policies = required(doc, "", "policies");
  if (!policies.is_array() || policies.empty()) {
    invalid("policies", "a non-empty array", policies);
  }
  for (std::size_t i = 0; i < policies.size(); ++i) {
    c.policies.push_back(parse_policy(policies[i], "policies[" + std::to_string(i) + "]"));
  }

  if (const json* s = find(doc, "start")) {
    if (s->is_string() && s->get<std::string>() == "stationary") {
      c.start = StartRule::stationary();
    } else if (s->is_object()) {
      reject_unknown(*s, "start", {"fixed"});
      const std::int64_t state = as_int(required(*s, "start", "fixed"), "start.fixed");
      if (state < 1 || state > c.k) {
        invalid("start.fixed", "a state in [1, " + std::to_string(c.k) + "]",
                s->at("fixed"));
      }
      c.start = StartRule::fixed(state - 1);
    } else {
      invalid("start", "\"stationary\" or {\"fixed\": <state>}", *s);
    }
  }

  if (const json* o = find(doc, "output")) {
    require_object(*o, "output");
    reject_unknown(*o, "output", {"dir"});
    if (const json* d = find(*o, "dir")) c.output_dir = as_string(*d, "output.dir");
  }

  validate(c);
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return ss.str();
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("error writing " + path);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ParseError(where + ": bad number \"" + s + "\"");
  return v;
}

}  // namespace

void write_results(std::span<const RegretTrace> traces, const std::string& path) {
  if (traces.empty()) throw ValidationError("write_results: no traces");
  auto out = open_out(path);
  out << kResultsHeader << '\n';
  for (const auto& tr : traces) {
    const std::string prefix = tr.policy_name + "," + format_exact(tr.delta) +
                               "," + std::to_string(tr.replication) + ",";
    for (Index t = 0; t < tr.cum_realized.size(); ++t) {
      out << prefix << (t + 1) << ',' << format_exact(tr.cum_realized[t]) << ','
          << format_exact(tr.cum_pseudo[t]) << '\n';
    }
  }
  finish(out, path);
}

std::vector<RegretTrace> read_results(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) {
    throw ParseError(path + ": missing or wrong header");
  }
  std::vector<RegretTrace> traces;
  std::vector<double> realized, pseudo;
  auto flush = [&] {
    if (traces.empty()) return;
    const auto n = static_cast<Index>(realized.size());
    traces.back().cum_realized = Eigen::Map<VectorXd>(realized.data(), n);
    traces.back().cum_pseudo = Eigen::Map<VectorXd>(pseudo.data(), n);
    realized.clear();
    pseudo.clear();
  };
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    const auto f = split_csv(line);
    if (f.size() != 6) throw ParseError(where + ": expected 6 fields");
    const double delta = parse_double(f[1], where);
    const auto rep = static_cast<std::int64_t>(parse_double(f[2], where));
    const auto t = static_cast<std::size_t>(parse_double(f[3], where));
    if (traces.empty() || traces.back().policy_name != f[0] ||
        traces.back().delta != delta || traces.back().replication != rep) {
      flush();
      traces.push_back({f[0], delta, rep, {}, {}});
    }
    if (t != realized.size() + 1) throw ParseError(where + ": t out of sequence");
    realized.push_back(parse_double(f[4], where));
    pseudo.push_back(parse_double(f[5], where));
  }
  flush();
  return traces;
}

void write_curves(std::span<const AggregateCurve> curves, const std::string& path) {
  if (curves.empty()) throw ValidationError("write_curves: no curves");
  auto out = open_out(path);
  out << kCurvesHeader << '\n';
  for (const auto& c : curves) {
    const std::string prefix = c.policy_name + "," + format_exact(c.delta) + ",";
    for (Index t = 0; t < c.mean_realized.size(); ++t) {
      out << prefix << (t + 1) << ',' << c.replications << ','
          << format_exact(c.mean_realized[t]) << ',' << format_exact(c.se_realized[t])
          << ',' << format_exact(c.mean_pseudo[t]) << ','
          << format_exact(c.se_pseudo[t]) << '\n';
    }
  }
  finish(out, path);
}

void write_sweep(std::span<const SweepRow> rows, const std::string& path) {
  if (rows.empty()) throw ValidationError("write_sweep: no rows");
  auto out = open_out(path);
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << format_exact(r.delta) << ',' << r.policy_name << ',' << r.replications
        << ',' << format_exact(r.mean_realized) << ',' << format_exact(r.se_realized)
        << ',' << format_exact(r.mean_pseudo) << ',' << format_exact(r.se_pseudo)
        << '\n';
  }
  finish(out, path);
}

}  // namespace ubandit
