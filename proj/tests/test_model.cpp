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
#include <limits>

#include "egalseq/io.hpp"
#include "egalseq/model.hpp"
#include "egalseq/oracle.hpp"
#include "support/gen.hpp"

using namespace egalseq;
using egalseq::testing::Gen;
using egalseq::testing::Shape;

namespace {

CommitteeSequence seq(const Election& e, std::vector<std::string> picks) {
  std::vector<std::vector<std::string>> ids;
  for (auto& p : picks) ids.push_back({p});
  return sequence_from_ids(e, ids);
}

}  // namespace

TEST_CASE("four-friends utilities are the published table") {
  const Election e = oracle::example1();
  REQUIRE(e.num_agents() == 4);
  REQUIRE(e.num_levels() == 3);
  // Ben, Dora, Eric, Fina; (opt1, opt2) per meal.
  const std::vector<std::vector<Utility>> rows = {
      {0, 0, 2, 1, 2, 1}, {3, 0, 3, 0, 1, 2}, {3, 0, 3, 0, 1, 2}, {0, 3, 0, 3, 0, 0}};
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t t = 0; t < 3; ++t) {
      CHECK(e.utility(t, a, 0) == rows[a][2 * t]);
      CHECK(e.utility(t, a, 1) == rows[a][2 * t + 1]);
    }
  }
}

TEST_CASE("four-friends scores of the four highlighted sequences") {
  const Election e = oracle::example1();
  struct Row {
    std::vector<std::string> picks;
    ScoreTriple triple;
    std::vector<Score> ord;
  };
  const std::vector<Row> rows = {
      {{"opt1", "opt1", "opt2"}, {0, 5, 19}, {0, 3, 8, 8}},
      {{"opt2", "opt1", "opt2"}, {3, 3, 16}, {3, 3, 5, 5}},
      {{"opt1", "opt2", "opt1"}, {3, 4, 14}, {3, 3, 4, 4}},
      {{"opt2", "opt1", "opt1"}, {3, 3, 15}, {3, 4, 4, 4}},
  };
  for (const auto& r : rows) {
    const auto x = seq(e, r.picks);
    CHECK(score_triple(e, x) == r.triple);
    CHECK(sat_histogram(e, x).sorted_scores() == r.ord);
  }
}

TEST_CASE("weights of the four-friends election") {
  // Column sums: breakfast (6, 3), lunch (8, 4), dinner (4, 5).
  const Election e = oracle::example1();
  CHECK(best_level_score(e, 0) == 6);
  CHECK(best_level_score(e, 1) == 8);
  CHECK(best_level_score(e, 2) == 5);
  const auto w = compute_weights(e);
  CHECK(w.theta == 9);
  CHECK(w.sigma == 20);
}

TEST_CASE("best level score matches brute-force committees") {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const Election e = g.election(Shape{});
    const auto best = oracle::brute_best_level_committees(e);
    for (std::size_t t = 0; t < e.num_levels(); ++t) {
      Score s = 0;
      for (auto c : best[t].front()) s += e.column_sum(t, c);
      CHECK(best_level_score(e, t) == s);
    }
  }
}

TEST_CASE("election construction rejects bad shapes") {
  Level lv{"x", {"c1", "c2"}, 1, {1, 0}};
  CHECK_NOTHROW(Election({"a"}, {lv}));
  CHECK_THROWS_AS(Election({}, {lv}), DataError);
  CHECK_THROWS_AS(Election({"a", "a"}, {Level{"x", {"c1"}, 1, {1, 1}}}), DataError);
  CHECK_THROWS_AS(Election({"a"}, {Level{"x", {"c1", "c1"}, 1, {1, 0}}}), DataError);
  CHECK_THROWS_AS(Election({"a"}, {Level{"x", {"c1"}, 2, {1}}}), DataError);
  CHECK_THROWS_AS(Election({"a"}, {Level{"x", {"c1", "c2"}, 1, {1}}}), DataError);
  CHECK_THROWS_AS(Election({"a"}, {Level{"x", {}, 0, {}}}), DataError);
  const Utility huge = std::numeric_limits<Utility>::max() / 2 + 1;
  CHECK_THROWS_AS(Election({"a", "b"}, {Level{"x", {"c1"}, 1, {huge, huge}}}), DataError);
  CHECK_NOTHROW(Election({"a"}, {}));
}

TEST_CASE("checked arithmetic") {
  const Score max = std::numeric_limits<Score>::max();
  CHECK(checked_add(2, 3) == 5);
  CHECK(checked_mul(4, 5) == 20);
  CHECK_THROWS(checked_add(max, 1));
  CHECK_THROWS(checked_mul(max / 2 + 1, 2));
}

TEST_CASE("partial sequences score only chosen candidates") {
  const Election e = oracle::example1();
  CommitteeSequence x = empty_sequence(e);
  CHECK(score_sum(e, x) == 0);
  x.committees[1] = {0};
  CHECK(agent_scores(e, x) == std::vector<Score>{2, 3, 3, 0});
  CHECK_FALSE(is_valid(e, x));
  x.committees[1] = {1, 0};
  CHECK_THROWS_AS(check_consistent(e, x), DataError);
}

TEST_CASE("histogram order is leximin order reversed") {
  Gen g(3);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = g.uniform(1, 6);
    std::vector<Score> s1, s2;
    for (std::size_t a = 0; a < n; ++a) {
      s1.push_back(g.uniform(0, 5));
      s2.push_back(g.uniform(0, 5));
    }
    const SatHistogram h1(s1, 5), h2(s2, 5);
    CHECK(lex_compare(h1, h2) == leximin_compare(s2, s1));
    // Dense counts compared lexicographically give the same answer.
    const auto d1 = h1.dense(), d2 = h2.dense();
    CHECK((d1 <=> d2) == lex_compare(h1, h2));
  }
}

TEST_CASE("exact lex score agrees with histogram comparison") {
  Gen g(5);
  for (int i = 0; i < 300; ++i) {
    const Election e = g.election(Shape{});
    const auto all = oracle::enumerate_valid(e);
    for (std::size_t j = 0; j + 1 < all.size() && j < 20; ++j) {
      const auto c = lex_compare(sat_histogram(e, all[j]), sat_histogram(e, all[j + 1]));
      const BigInt s1 = lex_score_exact(e, all[j]);
      const BigInt s2 = lex_score_exact(e, all[j + 1]);
      CHECK((c < 0) == (s1 < s2));
      CHECK((c == 0) == (s1 == s2));
    }
  }
}

TEST_CASE("exact lex score by its defining sum") {
  const Election e = oracle::example1();
  // ord (3,4,4,4) with Z = 9 (Dora) and n = 4: 1*5^6 + 3*5^5.
  const auto x = seq(e, {"opt2", "opt1", "opt1"});
  CHECK(e.max_possible_agent_score() == 9);
  CHECK(lex_score_exact(e, x) == BigInt(1 * 15625 + 3 * 3125));
}

TEST_CASE("weighted objective is the dot product with the weights") {
  const Election e = oracle::example1();
  const auto x = seq(e, {"opt1", "opt2", "opt1"});
  const auto w = compute_weights(e);
  const BigInt ts = BigInt(w.theta) * w.sigma;
  CHECK(weighted_objective(e, x, WeightOrder::kALS) == ts * 3 + BigInt(w.sigma) * 4 + 14);
  CHECK(weighted_objective(e, x, WeightOrder::kASL) == ts * 3 + 4 + BigInt(w.theta) * 14);
}

TEST_CASE("canonical order of sequences") {
  CommitteeSequence a{{{0}, {1}}}, b{{{1}, {0}}}, c{{{0, 1}, {0}}};
  CHECK(a < b);
  CHECK(a < c);
  CHECK(c < b);
  CHECK(concat(a, b).committees.size() == 4);
}

TEST_CASE("election documents round-trip") {
  Gen g(9);
  for (int i = 0; i < 50; ++i) {
    const Election e = g.election(Shape{}).with_meta({"src", "approval2", "kappa2", {"note"}});
    const Election back = io::parse_election(io::dump_election(e));
    CHECK(back == e);
    CHECK(io::dump_election(back) == io::dump_election(e));
    for (const auto& x : oracle::enumerate_valid(e, {5, oracle::EnumerationBudget::OnExceed::kTruncate})) {
      CHECK(io::sequence_from_json(e, io::sequence_to_json(e, x)) == x);
    }
  }
  CHECK_THROWS_AS(io::parse_election("{\"agents\": []}"), DataError);
  CHECK_THROWS_AS(io::parse_election("not json"), DataError);
  CHECK_THROWS_AS(io::parse_election(
                      R"({"agents":["a"],"levels":[{"candidates":["c"],"k":1,"utilities":[[-1]]}]})"),
                  DataError);
}
