// Copyright 2026 The egalseq Authors
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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "egalseq/oracle.hpp"
#include "egalseq/rules.hpp"
#include "support/gen.hpp"

using namespace egalseq;
using egalseq::testing::Gen;
using egalseq::testing::Shape;

namespace {

std::vector<std::vector<std::string>> ids(const Election& e, const CommitteeSequence& x) {
  return sequence_to_ids(e, x);
}

std::vector<std::vector<std::string>> picks(std::initializer_list<const char*> p) {
  std::vector<std::vector<std::string>> out;
  for (const char* s : p) out.push_back({s});
  return out;
}

solver::SolveConfig cap(std::size_t n) {
  solver::SolveConfig c;
  c.winner_cap = n;
  return c;
}

}  // namespace

TEST_CASE("four-friends single winners") {
  const Election e = oracle::example1();
  CHECK(ids(e, rules::single_winner(e, RuleId::kSum)) == picks({"opt1", "opt1", "opt2"}));
  CHECK(ids(e, rules::single_winner(e, RuleId::kGreedy)) == picks({"opt2", "opt1", "opt1"}));
  CHECK(ids(e, rules::single_winner(e, RuleId::kLex)) == picks({"opt2", "opt1", "opt1"}));
  CHECK(ids(e, rules::single_winner(e, RuleId::kALS)) == picks({"opt1", "opt2", "opt1"}));
  CHECK(ids(e, rules::single_winner(e, RuleId::kASL)) == picks({"opt2", "opt1", "opt2"}));
  CHECK(rules::all_winners(e, RuleId::kEgal).winners.size() == 3);
}

TEST_CASE("sum winners are the product of best level committees") {
  Gen g(31);
  for (int i = 0; i < 400; ++i) {
    const Election e = g.election(Shape{});
    const auto expect = oracle::brute_rule(e, RuleId::kSum).winners;
    const auto w = rules::rule_sum(e);
    CHECK(w.size() == expect.size());
    const auto listed = w.enumerate(100'000);
    CHECK(listed.complete);
    CHECK(listed.winners == expect);
    CHECK(w.single() == expect.front());
    for (const auto& x : oracle::enumerate_valid(e)) {
      CHECK(w.contains(x) == std::binary_search(expect.begin(), expect.end(), x));
    }
    const std::size_t c = g.uniform(1, 3);
    const auto capped = w.enumerate(c);
    CHECK(capped.complete == (expect.size() <= c));
    CHECK(capped.winners.size() == std::min(c, expect.size()));
  }
}

TEST_CASE("sum winners keep forced candidates and split ties") {
  // Column sums 5, 3, 3, 1 with k = 2: c1 forced, one of c2/c3.
  const Election e({"a"}, {Level{"L", {"c1", "c2", "c3", "c4"}, 2, {5, 3, 3, 1}}});
  const auto w = rules::rule_sum(e);
  REQUIRE(w.levels().size() == 1);
  CHECK(w.levels()[0].forced == std::vector<std::size_t>{0});
  CHECK(w.levels()[0].boundary == std::vector<std::size_t>{1, 2});
  CHECK(w.levels()[0].seats_from_boundary == 1);
  CHECK(*w.size() == 2);
  CHECK(w.level_committees(0, 10).size() == 2);
}

TEST_CASE("greedy single and all-paths results match the reference") {
  Gen g(32);
  int multi = 0;
  for (int i = 0; i < 600; ++i) {
    const Election e = g.election(Shape{});
    const auto expect = oracle::brute_rule(e, RuleId::kGreedy);
    const auto one = rules::rule_greedy(e);
    CHECK(is_valid(e, one));
    CHECK(expect.contains(one));
    const auto all = rules::rule_greedy_all(e, cap(100'000));
    CHECK_FALSE(all.timed_out);
    CHECK(all.winners.complete);
    CHECK(all.winners.winners == expect.winners);
    multi += expect.winners.size() > 1 ? 1 : 0;
  }
  CHECK(multi > 20);  // the sample exercises tie-breaking
}

TEST_CASE("greedy all-paths cap") {
  // Every sequence ties: one agent, zero utilities except one candidate per level.
  const Election e({"a"}, {Level{"L1", {"c1", "c2", "c3"}, 1, {1, 1, 1}},
                           Level{"L2", {"c1", "c2", "c3"}, 1, {1, 1, 1}}});
  const auto all = rules::rule_greedy_all(e, cap(4));
  CHECK(all.winners.winners.size() == 4);
  CHECK_FALSE(all.winners.complete);
  CHECK(rules::rule_greedy_all(e, cap(9)).winners.complete);
}

TEST_CASE("greedy counters") {
  Gen g(33);
  for (int i = 0; i < 200; ++i) {
    const Election e = g.election(Shape{});
    const auto r = rules::rule_greedy_detailed(e);
    std::size_t steps = 0;
    for (std::size_t t = 0; t < e.num_levels(); ++t) {
      std::size_t supported = 0;
      for (std::size_t c = 0; c < e.num_candidates(t); ++c) supported += e.column_sum(t, c) > 0;
      // Levels whose supported candidates exactly fill the committee are set up front.
      if (supported != std::min(e.k(t), supported)) steps += e.k(t);
      CHECK(r.unpadded.committees[t].size() == std::min(e.k(t), supported));
    }
    CHECK(r.counters.steps == steps);
    CHECK(r.counters.score_updates == e.num_agents() * r.counters.insertion_evaluations);
  }
}

TEST_CASE("greedy pads with unsupported candidates in index order") {
  const Election e({"a", "b"}, {Level{"L1", {"c1", "c2", "c3", "c4"}, 3, {0, 0, 2, 0, 0, 0, 1, 0}},
                                Level{"L2", {"d1", "d2"}, 1, {1, 0, 0, 1}}});
  const auto r = rules::rule_greedy_detailed(e);
  CHECK(r.unpadded.committees[0] == std::vector<std::size_t>{2});
  CHECK(r.sequence.committees[0] == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("all_winners and single_winner for every rule") {
  Gen g(34);
  for (int i = 0; i < 200; ++i) {
    const Election e = g.election(Shape{});
    for (RuleId r : kAllRules) {
      const auto expect = oracle::brute_rule(e, r).winners;
      const std::size_t c = g.uniform(1, 5);
      const auto got = rules::all_winners(e, r, cap(c));
      CHECK(got.complete == (expect.size() <= c));
      CHECK(got.winners.size() == std::min(c, expect.size()));
      for (const auto& x : got.winners) CHECK(std::binary_search(expect.begin(), expect.end(), x));
      if (r != RuleId::kGreedy) {
        CHECK(got.winners == std::vector<CommitteeSequence>(expect.begin(), expect.begin() + got.winners.size()));
      }
      const auto one = rules::single_winner(e, r);
      CHECK(std::binary_search(expect.begin(), expect.end(), one));
      if (r != RuleId::kGreedy) CHECK(one == expect.front());
    }
  }
}

TEST_CASE("budget failures surface as BudgetExceeded") {
  Gen g(35);
  const Election e = g.election_with(12, 10, Shape{12, 10, 8, 9, 3});
  solver::SolveConfig c;
  c.node_budget = 20;
  CHECK_THROWS_AS(rules::single_winner(e, RuleId::kLex, c), BudgetExceeded);
  CHECK_THROWS_AS(rules::all_winners(e, RuleId::kEgal, c), BudgetExceeded);
}
