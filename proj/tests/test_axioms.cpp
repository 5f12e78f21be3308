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
#include <map>
#include <set>

#include "egalseq/axioms.hpp"
#include "egalseq/io.hpp"
#include "egalseq/oracle.hpp"
#include "support/gen.hpp"
#include "support/literal.hpp"
#include "support/samples.hpp"

using namespace egalseq;
using namespace egalseq::axioms;
using egalseq::testing::Gen;
using egalseq::testing::Shape;

namespace {

const Shape& kSmall = testing::kAxiomShape;

AxiomConfig roomy() {
  AxiomConfig c;
  c.solve.winner_cap = 100'000;
  return c;
}

struct Fixture {
  RuleId rule;
  Property property;
  std::vector<Election> elections;
};

Fixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  Fixture f{parse_rule(doc.at("rule").get<std::string>()),
            parse_property(doc.at("property").get<std::string>()),
            {}};
  for (const auto& e : doc.at("elections")) f.elections.push_back(io::election_from_json(e));
  return f;
}

// The literal check of a sample; nullopt for a vacuous sub-consistency case.
std::optional<bool> literal(Property p, const std::vector<Election>& es, RuleId r) {
  switch (p) {
    case Property::kSafeConcatenation:
      return testing::literal_merge_holds(es[0], es[1], concat_elections(es[0], es[1]), r,
                                          testing::append_ids);
    case Property::kSafeUnion:
      return testing::literal_merge_holds(es[0], es[1], union_elections(es[0], es[1]), r,
                                          testing::union_ids);
    case Property::kSubConsistency:
      return testing::literal_sub_consistency(es[0], es[1], merge_agents(es[0], es[1]), r);
    case Property::kPareto:
      return testing::literal_pareto(es[0], r);
    case Property::kIndependentGroups: {
      const Grouping g = detect_grouping(es[0]);
      std::vector<Election> parts;
      for (std::size_t s = 0; s < g.size(); ++s) parts.push_back(sub_election(es[0], g, s));
      return testing::literal_independent_groups(es[0], parts, r);
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("property names") {
  for (std::size_t i = 0; i < kAllProperties.size(); ++i) {
    CHECK(parse_property(property_name(kAllProperties[i])) == kAllProperties[i]);
    CHECK(parse_property("P" + std::to_string(i + 1)) == kAllProperties[i]);
  }
  CHECK_THROWS_AS(parse_property("P6"), DataError);
}

TEST_CASE("which rules satisfy which properties in general") {
  using P = Property;
  // Rows: sum, greedy, egal, als, asl, lex; columns P1..P5.
  const std::map<RuleId, std::array<bool, 5>> table = {
      {RuleId::kSum, {true, false, true, true, true}},
      {RuleId::kGreedy, {false, false, false, false, true}},
      {RuleId::kEgal, {true, true, true, false, false}},
      {RuleId::kALS, {true, true, false, false, false}},
      {RuleId::kASL, {true, true, false, true, false}},
      {RuleId::kLex, {true, true, true, true, true}},
  };
  for (const auto& [rule, row] : table) {
    for (std::size_t i = 0; i < 5; ++i) CHECK(holds_in_general(rule, kAllProperties[i]) == row[i]);
  }
  (void)P::kPareto;
}

TEST_CASE("frozen fixtures violate their property, by the checker and literally") {
  const std::set<std::pair<RuleId, Property>> required = {
      {RuleId::kGreedy, Property::kSafeConcatenation}, {RuleId::kGreedy, Property::kSafeUnion},
      {RuleId::kGreedy, Property::kSubConsistency},    {RuleId::kGreedy, Property::kPareto},
      {RuleId::kSum, Property::kSafeUnion},            {RuleId::kASL, Property::kSubConsistency},
      {RuleId::kASL, Property::kIndependentGroups},    {RuleId::kALS, Property::kSubConsistency},
      {RuleId::kALS, Property::kPareto},               {RuleId::kALS, Property::kIndependentGroups},
  };
  std::set<std::pair<RuleId, Property>> seen;
  for (const auto& entry :
       std::filesystem::directory_iterator(std::filesystem::path(EGALSEQ_TEST_DATA) / "fixtures")) {
    const Fixture f = load_fixture(entry.path());
    CAPTURE(entry.path().filename().string());
    CHECK_FALSE(holds_in_general(f.rule, f.property));
    const AxiomVerdict v = testing::run_check(f.property, f.elections, f.rule, roomy());
    CHECK(v.verdict == Verdict::kViolated);
    CHECK_FALSE(v.witness.empty());
    const auto lit = literal(f.property, f.elections, f.rule);
    REQUIRE(lit.has_value());
    CHECK_FALSE(*lit);
    seen.insert({f.rule, f.property});
  }
  for (const auto& cell : required) CHECK(seen.count(cell) == 1);
}

TEST_CASE("checker verdicts equal the literal readings on random samples") {
  for (Property p : kAllProperties) {
    Gen g(100 + static_cast<int>(p));
    int decided = 0;
    for (int i = 0; i < 220; ++i) {
      const auto es = testing::axiom_sample(p, g);
      if (p == Property::kIndependentGroups && detect_grouping(es[0]).size() < 2) continue;
      ++decided;
      for (RuleId r : kAllRules) {
        CAPTURE(property_name(p));
        CAPTURE(rule_name(r));
        const AxiomVerdict v = testing::run_check(p, es, r, roomy());
        const auto lit = literal(p, es, r);
        REQUIRE(v.verdict != Verdict::kSkipped);
        if (!lit) {
          CHECK(v.verdict == Verdict::kHoldsVacuous);
        } else {
          CHECK(v.holds() == *lit);
          CHECK(v.verdict != Verdict::kHoldsVacuous);
        }
        if (holds_in_general(r, p)) CHECK(v.holds());
      }
    }
    CHECK(decided >= 200);
  }
}

TEST_CASE("concatenation, union and agent merge") {
  Gen g(7);
  const Election a = g.election_with(2, 2, kSmall);
  const Election b = g.election_with(2, 1, kSmall);
  const Election ab = concat_elections(a, b);
  CHECK(ab.num_levels() == 3);
  CHECK(ab.level(2).candidates == b.level(0).candidates);
  CHECK_THROWS_AS(concat_elections(a, g.election_with(3, 1, kSmall)), DataError);

  const Election x({"a1"}, {Level{"L", {"c1", "c2"}, 1, {1, 2}}});
  const Election y({"b1"}, {Level{"L", {"c2", "c3"}, 1, {3, 4}}});
  const Election u = union_elections(x, y);
  CHECK(u.level(0).candidates == std::vector<std::string>{"c1", "c2", "c3"});
  CHECK(u.k(0) == 2);
  CHECK(u.utility(0, 0, 2) == 0);
  CHECK(u.utility(0, 1, 1) == 3);
  CHECK_THROWS_AS(union_elections(x, x), DataError);
  const auto xy = union_sequence(x, y, u, CommitteeSequence{{{0}}}, CommitteeSequence{{{0}}});
  CHECK(xy.committees[0] == std::vector<std::size_t>{0, 1});

  const Election m = merge_agents(x, Election({"b1"}, {Level{"L", {"c1", "c2"}, 1, {5, 6}}}));
  CHECK(m.agents() == std::vector<std::string>{"a1", "b1"});
  CHECK(m.utility(0, 1, 1) == 6);
  CHECK_THROWS_AS(merge_agents(x, y), DataError);
}

TEST_CASE("glued elections split back along the construction") {
  Gen g(8);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const Election e1 = prefix_ids(g.election(kSmall), "p-", "");
    const Election e2 = prefix_ids(g.election(kSmall), "q-", "");
    const Election glued = glue_groups({e1, e2});
    CHECK(glued.num_agents() == e1.num_agents() + e2.num_agents());
    CHECK(glued.num_levels() == e1.num_levels() + e2.num_levels());
    if (testing::literal_independent_groups(glued, {e1, e2}, RuleId::kLex) == false) FAIL("lex");
    // Without dead levels or idle agents the finest grouping is the construction's.
    if (detect_grouping(e1).size() != 1 || detect_grouping(e2).size() != 1) continue;
    bool idle = false;
    for (const Election* e : {&e1, &e2}) {
      for (std::size_t a = 0; a < e->num_agents(); ++a) {
        Score s = 0;
        for (std::size_t t = 0; t < e->num_levels(); ++t) {
          for (auto u : e->row(t, a)) s += u;
        }
        idle = idle || s == 0;
      }
      for (std::size_t t = 0; t < e->num_levels(); ++t) {
        Score s = 0;
        for (std::size_t c = 0; c < e->num_candidates(t); ++c) s += e->column_sum(t, c);
        idle = idle || s == 0;
      }
    }
    if (idle) continue;
    const Grouping gr = detect_grouping(glued);
    REQUIRE(gr.size() == 2);
    CHECK(gr.level_cuts == std::vector<std::size_t>{e1.num_levels(), glued.num_levels()});
    CHECK_NOTHROW(check_grouping(glued, gr));
    const Election s0 = sub_election(glued, gr, 0);
    REQUIRE(s0.num_levels() == e1.num_levels());
    for (std::size_t t = 0; t < e1.num_levels(); ++t) {
      CHECK(s0.level(t).utility == e1.level(t).utility);
    }
    CHECK(sub_election(glued, gr, 1).agents() == e2.agents());
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("grouping validation") {
  const Election e({"a", "b"}, {Level{"L1", {"c"}, 1, {1, 0}}, Level{"L2", {"d"}, 1, {0, 1}}});
  const Grouping good{{{0}, {1}}, {1, 2}};
  CHECK_NOTHROW(check_grouping(e, good));
  const Grouping swapped{{{1}, {0}}, {1, 2}};
  CHECK_THROWS_AS(check_grouping(e, swapped), DataError);
  CHECK(detect_grouping(e).size() == 2);
  const Election shared({"a", "b"}, {Level{"L1", {"c"}, 1, {1, 1}}, Level{"L2", {"d"}, 1, {0, 1}}});
  CHECK(detect_grouping(shared).size() == 1);
  CHECK(check_independent_groups(shared, RuleId::kLex).verdict == Verdict::kSkipped);
}

TEST_CASE("id prefixes") {
  const Election e = prefix_ids(oracle::example1(), "x:", "y:");
  CHECK(e.agents().front() == "x:Ben");
  CHECK(e.level(0).candidates.front() == "y:opt1");
  CHECK(e.level(0).utility == oracle::example1().level(0).utility);
}

TEST_CASE("sub-consistency without a common winner is vacuous") {
  const Election e1({"a"}, {Level{"L", {"c1", "c2"}, 1, {1, 0}}});
  const Election e2({"b"}, {Level{"L", {"c1", "c2"}, 1, {0, 1}}});
  CHECK(check_sub_consistency(e1, e2, RuleId::kLex).verdict == Verdict::kHoldsVacuous);
}

TEST_CASE("truncated winner sets give skipped verdicts") {
  const Election e({"a"}, {Level{"L", {"c1", "c2", "c3"}, 1, {1, 1, 1}}});
  AxiomConfig c;
  c.solve.winner_cap = 2;
  const AxiomVerdict v = check_pareto(e, RuleId::kEgal, c);
  CHECK(v.verdict == Verdict::kSkipped);
  CHECK_FALSE(v.skipped_reason.empty());
}

TEST_CASE("pareto through the dominance search past the scan limit") {
  Gen g(9);
  for (int i = 0; i < 100; ++i) {
    const Election e = g.election(kSmall);
    AxiomConfig c = roomy();
    c.pareto_scan_limit = 0;
    for (RuleId r : kAllRules) {
      CHECK(check_pareto(e, r, c).holds() == testing::literal_pareto(e, r));
    }
  }
}

TEST_CASE("verdict rows") {
  const Fixture f = load_fixture(std::filesystem::path(EGALSEQ_TEST_DATA) / "fixtures" /
                                 "greedy_pareto.json");
  const auto row = verdict_to_json(check_pareto(f.elections[0], RuleId::kGreedy), {"fixture"});
  CHECK(row["verdict"] == "violated");
  CHECK(row["rule"] == "greedy");
  CHECK(row["witness"].size() == 2);
}
