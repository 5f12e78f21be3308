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

// Corpus-level experiments: score tables and axiom scans.

#ifndef EGALSEQ_HARNESS_HPP_
#define EGALSEQ_HARNESS_HPP_

#include <array>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "egalseq/axioms.hpp"
#include "egalseq/model.hpp"
#include "egalseq/rule_id.hpp"
#include "egalseq/solver.hpp"

namespace egalseq::harness {

struct CorpusInstance {
  std::string name;  // file name, the sort key of every protocol
  Election election;
};

struct Corpus {
  std::vector<CorpusInstance> instances;
  // (file name, error) for files that failed to load.
  std::vector<std::pair<std::string, std::string>> failures;
};

// Every *.json election in dir, sorted by file name. With kappa_l set the
// committee sizes are replaced by kappa_rule(e, *kappa_l). Throws DataError
// when dir is unreadable or holds no elections.
Corpus load_corpus(const std::filesystem::path& dir, std::optional<std::size_t> kappa_l = {});

// ---------------------------------------------------------------- score table

enum class ScoreKind { kLex, kAgentMin, kLevelMin, kSum };
inline constexpr std::array<ScoreKind, 4> kAllScores = {ScoreKind::kLex, ScoreKind::kAgentMin,
                                                        ScoreKind::kLevelMin, ScoreKind::kSum};
std::string_view score_name(ScoreKind s);

struct RunConfig {
  solver::SolveConfig solve;
  int jobs = 1;
};

struct InstanceScores {
  std::string name;
  // Optimum per score: lex from LEX, agent-min from EGAL, level-min and sum
  // from SUM.
  ScoreTriple optimum;
  BigInt optimum_lex;
  // Per rule, scores of its designated single winner.
  std::map<RuleId, ScoreTriple> achieved;
  std::map<RuleId, BigInt> achieved_lex;
  std::map<RuleId, double> seconds;
};

struct ScoreTableRow {
  RuleId rule = RuleId::kLex;
  std::array<double, 4> percent_optimal{};  // indexed like kAllScores
  std::array<double, 4> mean_percent{};
};

struct ScoreTable {
  std::vector<RuleId> rules;
  std::vector<ScoreTableRow> rows;
  std::vector<InstanceScores> instances;
  std::vector<std::pair<std::string, std::string>> failures;
  // Instances where the lex optimum's minimum agent score differs from the
  // egalitarian optimum; always empty unless something is broken.
  std::vector<std::string> consistency_violations;
};

// Percent of the optimum reached, in [0, 100]: value/optimum for maximized
// scores, optimum/value for the lex score, 100 when both are zero.
double percent_of_optimum(ScoreKind s, const InstanceScores& inst, RuleId rule);

ScoreTable score_table(const std::vector<CorpusInstance>& corpus, const std::vector<RuleId>& rules,
                       const RunConfig& config);

// One row per rule; percentages rounded to integers, halves up.
std::string score_table_csv(const ScoreTable& table);
nlohmann::ordered_json score_table_json(const ScoreTable& table, const RunConfig& config);
// Per (rule, score) a file of "optimum achieved" pairs, one line per
// instance, plus a runtime series per rule.
void write_plot_data(const ScoreTable& table, const std::filesystem::path& dir);

// ---------------------------------------------------------------- axiom scan

struct DiscardPolicy {
  std::chrono::milliseconds greedy_all_time_limit{10'000};
  std::size_t winner_cap = 30;
  // Size limits for the sub-consistency and independent-groups scans.
  std::size_t max_agents = 120;
  std::size_t max_candidates = 120;
  // Safe union pairs every instance with this many followers.
  std::size_t union_followers = 10;
};

enum class Discard { kNone, kCondition1, kCondition2, kError };

// The two main discard conditions for election e and property p, over the
// given rules: (1) greedy does not satisfy p in general and enumerating up to
// winner_cap greedy winners runs out of time; (2) otherwise, some rule that
// does not satisfy p in general has at least winner_cap winners.
Discard main_discard(const Election& e, axioms::Property p, const std::vector<RuleId>& rules,
                     const DiscardPolicy& policy, const solver::SolveConfig& solve);

// Some level on which no candidate gets utility of at least one.
bool has_dead_level(const Election& e);

// Agents [0, j) and [j, n) with every level kept.
std::pair<Election, Election> split_agents(const Election& e, std::size_t j);
// Levels [0, j) and [j, tau) with every agent kept.
std::pair<Election, Election> split_levels(const Election& e, std::size_t j);

struct RuleTally {
  bool universal = false;  // holds in general; not evaluated unless asked
  std::size_t satisfied = 0;
  std::size_t satisfied_vacuous = 0;  // sub-consistency with no common winner
  std::size_t violated = 0;
  std::size_t skipped = 0;
};

struct AxiomScanReport {
  axioms::Property property = axioms::Property::kPareto;
  std::vector<RuleId> rules;

  // Instance filtering; these add up to instances_total.
  std::size_t instances_total = 0;
  std::size_t instances_kept = 0;
  std::size_t instances_condition1 = 0;
  std::size_t instances_condition2 = 0;
  std::size_t instances_size = 0;
  std::size_t instances_other = 0;

  // Units are instances (pareto), pairs (concatenation, union,
  // sub-consistency) or glued instances (independent groups); these add up to
  // units_generated.
  std::size_t units_generated = 0;
  std::size_t units_considered = 0;
  std::size_t units_condition1 = 0;
  std::size_t units_condition2 = 0;
  std::size_t units_other = 0;

  std::map<RuleId, RuleTally> tallies;
  // One verdict_to_json row per violation.
  std::vector<nlohmann::ordered_json> witnesses;
};

struct ScanConfig {
  RunConfig run;
  DiscardPolicy policy;
  // Also evaluate rules that satisfy the property in general.
  bool check_universal = false;
};

AxiomScanReport axiom_scan(const std::vector<CorpusInstance>& corpus, axioms::Property p,
                           const std::vector<RuleId>& rules, const ScanConfig& config);

nlohmann::ordered_json scan_report_json(const AxiomScanReport& r, const ScanConfig& config);
// Per rule: satisfied, vacuous, violated, skipped (or "general").
std::string scan_report_csv(const AxiomScanReport& r);

}  // namespace egalseq::harness

#endif  // EGALSEQ_HARNESS_HPP_
