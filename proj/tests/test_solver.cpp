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
#include "egalseq/solver.hpp"
#include "support/gen.hpp"

using namespace egalseq;
using egalseq::testing::Gen;
using egalseq::testing::Shape;
using solver::LexBackend;
using solver::LexPruning;
using solver::Objective;
using solver::SolveConfig;

namespace {

constexpr RuleId kExact[] = {RuleId::kEgal, RuleId::kALS, RuleId::kASL, RuleId::kLex};

SolveConfig uncapped() {
  SolveConfig c;
  c.winner_cap = 100'000;
  return c;
}

}  // namespace

TEST_CASE("objective_for covers the optimizing rules only") {
  CHECK(solver::objective_for(RuleId::kEgal).kind == solver::ObjectiveKind::kMaxMinAgent);
  CHECK(solver::objective_for(RuleId::kALS).kind == solver::ObjectiveKind::kWeighted);
  CHECK(solver::objective_for(RuleId::kASL).order == WeightOrder::kASL);
  CHECK(solver::objective_for(RuleId::kLex).kind == solver::ObjectiveKind::kLexHistogram);
  CHECK_THROWS_AS(solver::objective_for(RuleId::kSum), std::invalid_argument);
  CHECK_THROWS_AS(solver::objective_for(RuleId::kGreedy), std::invalid_argument);
}

TEST_CASE("winner sets equal brute force for every backend") {
  Gen g(21);
  for (int i = 0; i < 250; ++i) {
    const Election e = g.election(Shape{});
    for (RuleId r : kExact) {
      const auto expect = oracle::brute_rule(e, r).winners;
      for (LexBackend b : {LexBackend::kBranchAndBound, LexBackend::kStaged, LexBackend::kPointRounds}) {
        for (LexPruning p : {LexPruning::kMinAgent, LexPruning::kSortedBounds}) {
          SolveConfig c = uncapped();
          c.lex_backend = b;
          c.lex_pruning = p;
          c.lex_window = g.uniform(0, 3);
          const auto got = solver::solve_all(e, solver::objective_for(r), c);
          CHECK(got.optimal);
          CHECK(got.winners.complete);
          CHECK(got.winners.winners == expect);
          const auto one = solver::solve_one(e, solver::objective_for(r), c);
          CHECK(one.optimal);
          CHECK(one.sequence == expect.front());
        }
      }
    }
  }
}

TEST_CASE("exclusion-based enumeration agrees with the single pass") {
  Gen g(22);
  for (int i = 0; i < 150; ++i) {
    const Election e = g.election(Shape{});
    for (RuleId r : kExact) {
      SolveConfig c;
      c.winner_cap = g.uniform(1, 6);
      const auto a = solver::solve_all(e, solver::objective_for(r), c);
      const auto b = solver::solve_all_by_exclusion(e, solver::objective_for(r), c);
      CHECK(a.winners.winners == b.winners.winners);
      CHECK(a.winners.complete == b.winners.complete);
    }
  }
}

TEST_CASE("capped winner sets are the canonical prefix") {
  Gen g(23);
  for (int i = 0; i < 200; ++i) {
    const Election e = g.election(Shape{});
    for (RuleId r : kExact) {
      const auto all = oracle::brute_rule(e, r).winners;
      SolveConfig c;
      c.winner_cap = g.uniform(1, 4);
      const auto got = solver::solve_all(e, solver::objective_for(r), c);
      const std::size_t keep = std::min(all.size(), c.winner_cap);
      CHECK(got.winners.winners == std::vector<CommitteeSequence>(all.begin(), all.begin() + keep));
      CHECK(got.winners.complete == (all.size() <= c.winner_cap));
      CHECK(got.optimal);
    }
  }
}

TEST_CASE("hints never change the answer") {
  Gen g(24);
  for (int i = 0; i < 150; ++i) {
    const Election e = g.election(Shape{});
    const auto all = oracle::enumerate_valid(e);
    for (RuleId r : kExact) {
      SolveConfig c = uncapped();
      const auto plain = solver::solve_all(e, solver::objective_for(r), c);
      c.hint = all[g.uniform(0, all.size() - 1)];
      const auto hinted = solver::solve_all(e, solver::objective_for(r), c);
      CHECK(plain.winners.winners == hinted.winners.winners);
      CHECK(solver::solve_one(e, solver::objective_for(r), c).sequence == plain.winners.winners.front());
    }
  }
}

TEST_CASE("optimistic bounds are admissible") {
  Gen g(25);
  for (int i = 0; i < 300; ++i) {
    const Election e = g.election(Shape{});
    const auto all = oracle::enumerate_valid(e);
    const auto& y = all[g.uniform(0, all.size() - 1)];
    const std::size_t t = g.uniform(0, e.num_levels() - 1);
    const std::size_t j = g.uniform(0, y.committees[t].size());
    CommitteeSequence partial = empty_sequence(e);
    for (std::size_t s = 0; s < t; ++s) partial.committees[s] = y.committees[s];
    partial.committees[t].assign(y.committees[t].begin(), y.committees[t].begin() + j);
    const auto bounds = solver::optimistic_bounds(e, partial);

    const std::size_t floor = j == 0 ? 0 : partial.committees[t].back() + 1;
    for (const auto& z : all) {
      bool extends = std::equal(z.committees.begin(), z.committees.begin() + t, y.committees.begin());
      const auto& zt = z.committees[t];
      extends = extends && std::equal(partial.committees[t].begin(), partial.committees[t].end(), zt.begin());
      for (std::size_t q = j; q < zt.size() && extends; ++q) extends = zt[q] >= floor;
      if (!extends) continue;
      const auto s = agent_scores(e, z);
      for (std::size_t a = 0; a < s.size(); ++a) CHECK(s[a] <= bounds.agent[a]);
      CHECK(score_level_min(e, z) <= bounds.level_min);
      CHECK(score_sum(e, z) <= bounds.total);
    }
  }
}

TEST_CASE("dominating sequences are found exactly when they exist") {
  Gen g(26);
  for (int i = 0; i < 200; ++i) {
    const Election e = g.election(Shape{});
    const auto all = oracle::enumerate_valid(e);
    const auto& x = all[g.uniform(0, all.size() - 1)];
    const bool exists = std::any_of(all.begin(), all.end(),
                                    [&](const CommitteeSequence& y) { return oracle::dominates(e, y, x); });
    const auto found = solver::find_dominating(e, x);
    CHECK(found.has_value() == exists);
    if (found) CHECK(oracle::dominates(e, *found, x));
  }
}

TEST_CASE("objective comparison matches the rule semantics") {
  const Election e = oracle::example1();
  const auto lex = oracle::brute_rule(e, RuleId::kLex).winners.front();
  const auto als = oracle::brute_rule(e, RuleId::kALS).winners.front();
  CHECK(solver::compare_objective(e, Objective::lex(), lex, als) > 0);
  CHECK(solver::compare_objective(e, Objective::weighted(WeightOrder::kALS), lex, als) < 0);
  CHECK(solver::compare_objective(e, Objective::max_min_agent(), lex, als) == 0);
}

TEST_CASE("lex window width") {
  // floor(log 1e17 / log(n+1)) - 1: n=1 -> floor(56.47) - 1, n=3 -> floor(28.24) - 1,
  // n=100 -> floor(8.48) - 1.
  CHECK(solver::default_lex_window(1) == 55);
  CHECK(solver::default_lex_window(3) == 27);
  CHECK(solver::default_lex_window(100) == 7);
  CHECK(solver::default_lex_window(1'000'000'000) == 1);
}

TEST_CASE("budgets and infeasible inputs") {
  const Election none({"a"}, {});
  CHECK_THROWS_AS(solver::solve_one(none, Objective::lex()), InfeasibleError);

  Gen g(27);
  const Election e = g.election_with(6, 6, Shape{6, 6, 6, 9, 3});
  SolveConfig c;
  c.node_budget = 3;
  CHECK_THROWS_AS(solver::solve_one(e, Objective::lex(), c), BudgetExceeded);
  c.node_budget = 60;
  const auto r = solver::solve_one(e, Objective::lex(), c);
  CHECK_FALSE(r.optimal);
  CHECK(is_valid(e, r.sequence));
  const auto all = solver::solve_all(e, Objective::max_min_agent(), c);
  CHECK_FALSE(all.optimal);
  CHECK_FALSE(all.winners.complete);

  c.node_budget = 0;
  CHECK_THROWS_AS(solver::solve_one(e, Objective::lex(), c), std::invalid_argument);
}

TEST_CASE("backend registry") {
  SolveConfig c;
  c.lex_backend = LexBackend::kStaged;
  CHECK(solver::backend_for(c).name() == "staged-lex");
  c.lex_backend = LexBackend::kPointRounds;
  CHECK(solver::backend_for(c).name() == "point-rounds-lex");
  c.lex_backend = LexBackend::kBranchAndBound;
  CHECK(solver::backend_for(c).name() == "branch-and-bound");
}
