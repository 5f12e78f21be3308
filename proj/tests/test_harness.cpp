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

#include <filesystem>
#include <fstream>

#include "egalseq/harness.hpp"
#include "egalseq/io.hpp"
#include "egalseq/oracle.hpp"
#include "support/gen.hpp"

using namespace egalseq;
using namespace egalseq::harness;
using axioms::Property;
using egalseq::testing::Gen;
using egalseq::testing::Shape;

namespace {

const std::vector<RuleId> kRules(kAllRules.begin(), kAllRules.end());

std::vector<CorpusInstance> random_corpus(std::uint64_t seed, std::size_t size) {
  Gen g(seed);
  std::vector<CorpusInstance> out;
  for (std::size_t i = 0; i < size; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "r%03zu.json", i);
    out.push_back({name, g.election(Shape{4, 3, 3, 3, 2, 1, 2})});
  }
  return out;
}

std::size_t index_of(ScoreKind s) {
  for (std::size_t i = 0; i < kAllScores.size(); ++i) {
    if (kAllScores[i] == s) return i;
  }
  return 0;
}

const ScoreTableRow& row_of(const ScoreTable& t, RuleId r) {
  for (const auto& row : t.rows) {
    if (row.rule == r) return row;
  }
  FAIL("missing row");
  return t.rows.front();
}

void check_accounting(const AxiomScanReport& r) {
  CHECK(r.instances_total == r.instances_kept + r.instances_condition1 + r.instances_condition2 +
                                 r.instances_size + r.instances_other);
  CHECK(r.units_generated ==
        r.units_considered + r.units_condition1 + r.units_condition2 + r.units_other);
  for (const auto& [rule, tally] : r.tallies) {
    if (tally.universal) continue;
    CHECK(tally.satisfied + tally.satisfied_vacuous + tally.violated + tally.skipped ==
          r.units_considered);
  }
}

}  // namespace

TEST_CASE("score table on the four friends") {
  const std::vector<CorpusInstance> corpus = {{"friends.json", oracle::example1()}};
  const ScoreTable t = score_table(corpus, kRules, RunConfig{});
  REQUIRE(t.instances.size() == 1);
  CHECK(t.consistency_violations.empty());
  CHECK(t.instances[0].optimum.agent_min == 3);
  CHECK(t.instances[0].optimum.total == 19);
  CHECK(t.instances[0].optimum_lex == BigInt(25000));

  const auto& sum = row_of(t, RuleId::kSum);
  CHECK(sum.percent_optimal[index_of(ScoreKind::kAgentMin)] == 0.0);
  CHECK(sum.percent_optimal[index_of(ScoreKind::kSum)] == 100.0);
  const auto& lex = row_of(t, RuleId::kLex);
  CHECK(lex.percent_optimal[index_of(ScoreKind::kLex)] == 100.0);
  CHECK(lex.percent_optimal[index_of(ScoreKind::kAgentMin)] == 100.0);
  // LEX sum 15 of 19.
  CHECK(lex.mean_percent[index_of(ScoreKind::kSum)] == doctest::Approx(1500.0 / 19));

  const std::string csv = score_table_csv(t);
  CHECK(csv.find("lex,100,100,") != std::string::npos);
}

TEST_CASE("percent of the optimum") {
  InstanceScores s;
  s.optimum = {0, 0, 4};
  s.optimum_lex = 10;
  s.achieved[RuleId::kSum] = {0, 0, 3};
  s.achieved_lex[RuleId::kSum] = 40;
  CHECK(percent_of_optimum(ScoreKind::kAgentMin, s, RuleId::kSum) == 100.0);
  CHECK(percent_of_optimum(ScoreKind::kSum, s, RuleId::kSum) == 75.0);
  CHECK(percent_of_optimum(ScoreKind::kLex, s, RuleId::kSum) == 25.0);
}

TEST_CASE("score table invariants on a random corpus") {
  const auto corpus = random_corpus(3, 25);
  RunConfig c;
  c.jobs = 4;
  const ScoreTable t = score_table(corpus, kRules, c);
  CHECK(t.consistency_violations.empty());
  CHECK(t.instances.size() == corpus.size());
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(row.percent_optimal[i] >= 0.0);
      CHECK(row.percent_optimal[i] <= 100.0);
      CHECK(row.mean_percent[i] >= row.percent_optimal[i] - 1e-9);
    }
  }
  CHECK(row_of(t, RuleId::kEgal).percent_optimal[index_of(ScoreKind::kAgentMin)] == 100.0);
  CHECK(row_of(t, RuleId::kLex).percent_optimal[index_of(ScoreKind::kLex)] == 100.0);
  CHECK(row_of(t, RuleId::kSum).percent_optimal[index_of(ScoreKind::kSum)] == 100.0);
  CHECK(row_of(t, RuleId::kSum).percent_optimal[index_of(ScoreKind::kLevelMin)] == 100.0);
  CHECK_THROWS_AS(score_table({}, kRules, c), DataError);
}

TEST_CASE("scan accounting on a random corpus, serial and parallel agree") {
  const auto corpus = random_corpus(5, 14);
  for (Property p : axioms::kAllProperties) {
    CAPTURE(axioms::property_name(p));
    ScanConfig serial;
    serial.check_universal = true;
    ScanConfig parallel = serial;
    parallel.run.jobs = 4;
    const AxiomScanReport a = axiom_scan(corpus, p, kRules, serial);
    const AxiomScanReport b = axiom_scan(corpus, p, kRules, parallel);
    check_accounting(a);
    CHECK(scan_report_json(a, serial).dump() == scan_report_json(b, serial).dump());
    CHECK(a.units_generated > 0);
    for (const auto& [rule, tally] : a.tallies) {
      if (axioms::holds_in_general(rule, p)) CHECK(tally.violated == 0);
    }
  }
}

TEST_CASE("unit counts per protocol") {
  ScanConfig c;
  const std::vector<CorpusInstance> one = {{"friends.json", oracle::example1()}};
  const auto sub = axiom_scan(one, Property::kSubConsistency, kRules, c);
  CHECK(sub.instances_kept == 1);
  CHECK(sub.units_generated == 3);
  const auto cat = axiom_scan(one, Property::kSafeConcatenation, kRules, c);
  CHECK(cat.units_generated == 2);
  const auto par = axiom_scan(one, Property::kPareto, kRules, c);
  CHECK(par.units_generated == 1);
  CHECK(par.units_considered == 1);

  const std::vector<CorpusInstance> two = {{"a.json", oracle::example1()},
                                           {"b.json", oracle::example1()}};
  const auto groups = axiom_scan(two, Property::kIndependentGroups, kRules, c);
  CHECK(groups.units_generated == 1);
  check_accounting(groups);
  const auto uni = axiom_scan(two, Property::kSafeUnion, kRules, c);
  CHECK(uni.units_generated == 1);
}

TEST_CASE("universal cells are reported, not evaluated, by default") {
  const std::vector<CorpusInstance> one = {{"friends.json", oracle::example1()}};
  const auto r = axiom_scan(one, Property::kPareto, kRules, ScanConfig{});
  CHECK(r.tallies.at(RuleId::kLex).universal);
  CHECK(r.tallies.at(RuleId::kLex).satisfied == 0);
  CHECK(scan_report_csv(r).find("general") != std::string::npos);
}

TEST_CASE("a winner cap of one discards everything") {
  ScanConfig c;
  c.policy.winner_cap = 1;
  const auto corpus = random_corpus(6, 6);
  const auto r = axiom_scan(corpus, Property::kPareto, kRules, c);
  CHECK(r.instances_condition2 == corpus.size());
  CHECK(r.units_generated == 0);
  check_accounting(r);
}

TEST_CASE("size filter") {
  ScanConfig c;
  c.policy.max_agents = 3;
  const std::vector<CorpusInstance> one = {{"friends.json", oracle::example1()}};
  const auto r = axiom_scan(one, Property::kSubConsistency, kRules, c);
  CHECK(r.instances_size == 1);
  CHECK(r.units_generated == 0);
}

TEST_CASE("split helpers") {
  const Election e = oracle::example1();
  const auto [left, right] = split_agents(e, 1);
  CHECK(left.num_agents() == 1);
  CHECK(right.num_agents() == 3);
  CHECK(right.num_levels() == 3);
  const auto [first, rest] = split_levels(e, 2);
  CHECK(first.num_levels() == 2);
  CHECK(rest.level(0).name == e.level(2).name);
  CHECK_THROWS_AS(split_agents(e, 0), DataError);
  CHECK_THROWS_AS(split_levels(e, 3), DataError);

  CHECK_FALSE(has_dead_level(e));
  const Election dead({"a"}, {Level{"x", {"c"}, 1, {1}}, Level{"y", {"d"}, 1, {0}}});
  CHECK(has_dead_level(dead));
}

TEST_CASE("corpus loading") {
  const auto dir = std::filesystem::temp_directory_path() / "egalseq_corpus_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  CHECK_THROWS_AS(load_corpus(dir), DataError);
  io::write_election(oracle::example1(), dir / "b.json");
  io::write_election(oracle::example1(), dir / "a.json");
  std::ofstream(dir / "broken.json") << "{";
  const Corpus c = load_corpus(dir, 1);
  REQUIRE(c.instances.size() == 2);
  CHECK(c.instances[0].name == "a.json");
  CHECK(c.failures.size() == 1);
  CHECK(c.instances[0].election.k(0) == 1);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(load_corpus(dir), DataError);
}
