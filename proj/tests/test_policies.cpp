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

#include <cmath>

#include "doctest.h"
#include "ubandit/policies.hpp"

using namespace ubandit;

namespace {

PolicyState with(std::initializer_list<std::int64_t> pulls,
                 std::initializer_list<double> sums) {
  PolicyState s(static_cast<Index>(pulls.size()));
  Index i = 0;
  for (auto p : pulls) s.pulls[i++] = p;
  i = 0;
  for (auto v : sums) s.reward_sums[i++] = v;
  s.t = s.pulls.sum();
  return s;
}

}  // namespace

TEST_CASE("genie targets the best true mean") {
  CHECK(genie_target(RewardModel::bernoulli({0.9, 0.5, 0.1}), 0.3).target == 0);
  CHECK(genie_target(RewardModel::bernoulli({0.5, 0.5}), 0.3).target == 0);
  CHECK(genie_target(RewardModel::bernoulli({0.2, 0.5, 0.4}), 0.3).target == 1);
  for (Index k = 2; k <= 10; ++k) {
    std::vector<double> mu;
    for (Index i = 0; i < k; ++i) mu.push_back(0.9 - 0.05 * static_cast<double>(i));
    CHECK(genie_target(RewardModel::bernoulli(mu), 0.1).target == 0);
  }
}

TEST_CASE("p2ee explores the least-visited arm") {
  auto s = with({5, 2, 7}, {1, 1, 1});
  CHECK(p2ee_target(s, 100, 0.3).target == 1);
  auto tie = with({3, 3, 3}, {1, 1, 1});
  CHECK(p2ee_target(tie, 100, 0.3).target == 0);
  CHECK(s.phase == Phase::kExplore);
}

TEST_CASE("p2ee commits once to the empirical best and stays there") {
  auto s = with({10, 10, 10}, {4.0, 8.0, 6.0});  // means 0.4, 0.8, 0.6
  const std::int64_t boundary = s.t;
  CHECK(p2ee_target(s, boundary, 0.3).target == 1);
  CHECK(s.phase == Phase::kCommit);
  REQUIRE(s.committed_arm);
  CHECK(*s.committed_arm == 1);
  // Later evidence does not move the commitment.
  for (int i = 0; i < 50; ++i) {
    update(s, {0, 1.0, s.t});
    CHECK(p2ee_target(s, boundary, 0.3).target == 1);
  }
}

TEST_CASE("p2ee commit ignores unvisited arms and needs data") {
  auto s = with({0, 4, 4}, {0.0, 1.0, 2.0});
  CHECK(p2ee_target(s, 0, 0.1).target == 2);
  PolicyState empty(3);
  CHECK_THROWS_AS(p2ee_target(empty, 0, 0.1), NoDataError);
}

TEST_CASE("p2ee phase switches exactly at explore_len") {
  PolicyState s(3);
  const std::int64_t len = 7;
  for (std::int64_t t = 0; t < 20; ++t) {
    p2ee_target(s, len, 0.2);
    CHECK((s.phase == Phase::kCommit) == (t >= len));
    update(s, {static_cast<Index>(t % 3), t % 3 == 2 ? 1.0 : 0.0, t});
  }
  CHECK(*s.committed_arm == 2);
}

TEST_CASE("explore_length is ceil(alpha T)") {
  CHECK(explore_length(0.1, 5000) == 500);
  CHECK(explore_length(0.1, 5001) == 501);
  CHECK(explore_length(0.0, 100) == 0);
  CHECK_THROWS_AS(explore_length(1.5, 100), RangeError);
}

TEST_CASE("ucb index") {
  CHECK(ucb_target(with({0, 5}, {0.0, 3.0}), 0.1).target == 0);
  CHECK(ucb_target(with({4, 0, 0}, {1.0, 0.0, 0.0}), 0.1).target == 1);
  CHECK(ucb_target(with({4, 4}, {2.0, 1.0}), 0.1).target == 0);

  // Index values recomputed by hand: 0.6 + sqrt(2 ln 104 / 100) and
  // 0.55 + sqrt(2 ln 104 / 4).
  const double i1 = 0.6 + std::sqrt(2.0 * std::log(104.0) / 100.0);
  const double i2 = 0.55 + std::sqrt(2.0 * std::log(104.0) / 4.0);
  CHECK(i1 == doctest::Approx(0.904775).epsilon(1e-6));
  CHECK(i2 == doctest::Approx(2.073875).epsilon(1e-6));
  CHECK(ucb_target(with({100, 4}, {60.0, 2.2}), 0.1).target == 1);
}

TEST_CASE("ucb index is nonincreasing in pulls") {
  // Hold the mean (0.5) and t fixed; more pulls on arm 0 can only lower its
  // index, so once arm 1 wins it keeps winning.
  bool arm1_won = false;
  for (std::int64_t n = 1; n < 400; ++n) {
    PolicyState s(2);
    s.pulls << n, 50;
    s.reward_sums << 0.5 * static_cast<double>(n), 25.0;
    s.t = 1000;
    const Index target = ucb_target(s, 0.1).target;
    if (arm1_won) CHECK(target == 1);
    arm1_won = arm1_won || target == 1;
  }
  CHECK(arm1_won);
}

TEST_CASE("greedy") {
  CHECK(greedy_target(with({10, 10, 10}, {2.0, 9.0, 5.0}), 0.1).target == 1);
  CHECK(greedy_target(PolicyState(3), 0.1).target == 0);
  CHECK(greedy_target(with({10, 0}, {7.0, 0.0}), 0.1).target == 0);
  CHECK(greedy_target(with({0, 10}, {0.0, 7.0}), 0.1).target == 1);
}

TEST_CASE("argmax decisions are invariant to positive reward scaling") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    PolicyState s(5);
    for (Index i = 0; i < 5; ++i) {
      s.pulls[i] = 1 + static_cast<std::int64_t>(rng() % 50);
      s.reward_sums[i] = u(rng) * static_cast<double>(s.pulls[i]);
    }
    s.t = s.pulls.sum();
    PolicyState scaled = s;
    scaled.reward_sums *= 0.5 + 10.0 * u(rng);
    CHECK(greedy_target(s, 0.1).target == greedy_target(scaled, 0.1).target);
    CHECK(p2ee_target(s, 0, 0.1).target == p2ee_target(scaled, 0, 0.1).target);
  }
}

TEST_CASE("noop leaves the chain alone") {
  CHECK_FALSE(noop_target().has_value());
  const auto r = RewardModel::bernoulli({0.9, 0.1});
  for (double delta : {0.0, 0.3, 1.0}) {
    Policy p({PolicyKind::kNoop, "noop"}, r, delta, 10);
    CHECK_FALSE(p.decide().has_value());
  }
}

TEST_CASE("update") {
  PolicyState s(2);
  update(s, {0, 0.5, 0});
  CHECK(s.pulls[0] == 1);
  CHECK(s.pulls[1] == 0);
  CHECK(s.reward_sums[0] == 0.5);
  update(s, {0, 0.25, 1});
  CHECK(s.pulls[0] == 2);
  CHECK(s.t == 2);
  CHECK(*s.empirical_mean(0) == 0.375);
  CHECK_FALSE(s.empirical_mean(1).has_value());
  CHECK_THROWS_AS(update(s, {2, 0.0, 2}), IndexError);

  for (int n = 0; n < 100; ++n) update(s, {n % 2, 1.0, s.t});
  CHECK(s.pulls.sum() == s.t);
}

TEST_CASE("policies are deterministic in their history") {
  const auto r = RewardModel::bernoulli({0.2, 0.6, 0.4});
  for (auto kind : {PolicyKind::kP2ee, PolicyKind::kUcb, PolicyKind::kGreedy}) {
    Policy a({kind, ""}, r, 0.2, 100), b({kind, ""}, r, 0.2, 100);
    for (std::int64_t t = 0; t < 100; ++t) {
      const auto da = a.decide(), db = b.decide();
      REQUIRE(da.has_value() == db.has_value());
      if (da) CHECK(da->target == db->target);
      const Observation obs{static_cast<Index>((t * 7) % 3), (t % 5) / 4.0, t};
      a.observe(obs);
      b.observe(obs);
    }
  }
}

TEST_CASE("policy kind names round-trip") {
  for (auto k : {PolicyKind::kGenie, PolicyKind::kP2ee, PolicyKind::kUcb,
                 PolicyKind::kGreedy, PolicyKind::kNoop}) {
    CHECK(parse_policy_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_policy_kind("thompson").has_value());
  CHECK_THROWS_AS(BiasDecision(0, 1.5), RangeError);
}
