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

// Random search for small elections on which a rule violates a property.
// Writes one JSON file per (rule, property) cell:
//
//   {"rule": "greedy", "property": "pareto", "seed": 17, "elections": [...]}
//
// Usage: find_fixtures OUT_DIR [--seed S] [--attempts N]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "egalseq/axioms.hpp"
#include "egalseq/io.hpp"
#include "egalseq/oracle.hpp"

using namespace egalseq;
using axioms::Property;

namespace {

struct Cell {
  RuleId rule;
  Property property;
};

const std::vector<Cell> kCells = {
    {RuleId::kGreedy, Property::kSafeConcatenation},
    {RuleId::kGreedy, Property::kSafeUnion},
    {RuleId::kGreedy, Property::kSubConsistency},
    {RuleId::kGreedy, Property::kPareto},
    {RuleId::kSum, Property::kSafeUnion},
    {RuleId::kASL, Property::kSubConsistency},
    {RuleId::kASL, Property::kIndependentGroups},
    {RuleId::kALS, Property::kSubConsistency},
    {RuleId::kALS, Property::kPareto},
    {RuleId::kALS, Property::kIndependentGroups},
    {RuleId::kEgal, Property::kPareto},
    {RuleId::kEgal, Property::kIndependentGroups},
};

oracle::RandomElectionSpec pick_spec(std::mt19937_64& rng, std::size_t round) {
  const std::size_t grow = round / 2000;  // widen slowly as attempts pile up
  std::uniform_int_distribution<std::size_t> agents(2, 3 + grow), levels(1, 2 + grow),
      cands(2, 3), umax(1, 3), kmax(1, 2);
  oracle::RandomElectionSpec s;
  s.agents = agents(rng);
  s.levels = levels(rng);
  s.min_candidates = 2;
  s.max_candidates = cands(rng);
  s.max_utility = umax(rng);
  s.min_k = 1;
  s.max_k = kmax(rng);
  return s;
}

// Same candidates and committee sizes as e, fresh utilities, agents renamed.
Election sibling(const Election& e, std::size_t agents, Utility umax, std::mt19937_64& rng) {
  std::uniform_int_distribution<Utility> u(0, umax);
  std::vector<std::string> ids;
  for (std::size_t a = 0; a < agents; ++a) ids.push_back("b" + std::to_string(a + 1));
  std::vector<Level> levels = e.levels();
  for (auto& lv : levels) {
    lv.utility.resize(agents * lv.candidates.size());
    for (auto& x : lv.utility) x = u(rng);
  }
  return Election(std::move(ids), std::move(levels));
}

// Candidate elections for one property; the last element is what gets checked.
std::vector<Election> sample(Property p, std::mt19937_64& rng, std::size_t round) {
  auto s1 = pick_spec(rng, round);
  Election e1 = oracle::gen_random(s1, rng);
  switch (p) {
    case Property::kPareto:
      return {e1};
    case Property::kSafeConcatenation: {
      auto s2 = pick_spec(rng, round);
      s2.agents = s1.agents;
      return {e1, oracle::gen_random(s2, rng)};
    }
    case Property::kSafeUnion: {
      auto s2 = pick_spec(rng, round);
      s2.levels = s1.levels;
      return {axioms::prefix_ids(e1, "L", "L"),
              axioms::prefix_ids(oracle::gen_random(s2, rng), "R", "R")};
    }
    case Property::kSubConsistency: {
      std::uniform_int_distribution<std::size_t> agents(1, 3);
      return {e1, sibling(e1, agents(rng), s1.max_utility, rng)};
    }
    case Property::kIndependentGroups: {
      auto s2 = pick_spec(rng, round);
      return {axioms::glue_groups({axioms::prefix_ids(e1, "g1-", ""),
                                   axioms::prefix_ids(oracle::gen_random(s2, rng), "g2-", "")})};
    }
  }
  return {};
}

bool violated(const Cell& cell, const std::vector<Election>& es) {
  axioms::AxiomConfig cfg;
  cfg.solve.winner_cap = 64;
  axioms::AxiomVerdict v;
  switch (cell.property) {
    case Property::kSafeConcatenation:
      v = axioms::check_safe_concatenation(es[0], es[1], cell.rule, cfg);
      break;
    case Property::kSafeUnion:
      v = axioms::check_safe_union(es[0], es[1], cell.rule, cfg);
      break;
    case Property::kSubConsistency:
      v = axioms::check_sub_consistency(es[0], es[1], cell.rule, cfg);
      break;
    case Property::kPareto:
      v = axioms::check_pareto(es[0], cell.rule, cfg);
      break;
    case Property::kIndependentGroups:
      v = axioms::check_independent_groups(es[0], cell.rule, cfg);
      break;
  }
  return v.verdict == axioms::Verdict::kViolated;
}

std::size_t size_of(const std::vector<Election>& es) {
  std::size_t s = 0;
  for (const auto& e : es) {
    for (const auto& lv : e.levels()) s += lv.utility.size();
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search small violating elections"};
  std::string out_dir;
  std::uint64_t seed = 1;
  std::size_t attempts = 200'000;
  std::size_t polish = 2'000;
  app.add_option("out", out_dir)->required();
  app.add_option("--seed", seed);
  app.add_option("--attempts", attempts, "Give up on a cell after this many samples");
  app.add_option("--polish", polish, "Samples spent looking for a smaller hit");
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(out_dir);
  int missing = 0;
  for (const Cell& cell : kCells) {
    std::mt19937_64 rng(seed);
    std::vector<Election> best;
    std::size_t first_hit = 0;
    for (std::size_t i = 0; i < attempts; ++i) {
      if (!best.empty() && i > first_hit + polish) break;
      std::vector<Election> es;
      try {
        es = sample(cell.property, rng, i);
        if (!violated(cell, es)) continue;
      } catch (const std::exception&) {
        continue;
      }
      if (best.empty()) first_hit = i;
      if (best.empty() || size_of(es) < size_of(best)) best = std::move(es);
    }
    const std::string name =
        std::string(rule_name(cell.rule)) + "_" + std::string(axioms::property_name(cell.property));
    if (best.empty()) {
      std::cout << name << ": none found\n";
      ++missing;
      continue;
    }
    nlohmann::ordered_json doc;
    doc["rule"] = rule_name(cell.rule);
    doc["property"] = axioms::property_name(cell.property);
    doc["seed"] = seed;
    doc["elections"] = nlohmann::ordered_json::array();
    for (const auto& e : best) doc["elections"].push_back(io::election_to_json(e));
    std::ofstream(std::filesystem::path(out_dir) / (name + ".json")) << doc.dump(2) << '\n';
    std::cout << name << ": found after " << first_hit + 1 << " samples, size " << size_of(best)
              << '\n';
  }
  return missing == 0 ? 0 : 1;
}
