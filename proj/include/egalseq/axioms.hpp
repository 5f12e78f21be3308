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

// Election algebra (concatenation, union, grouping) and per-instance checks
// of the five axiomatic properties.

#ifndef EGALSEQ_AXIOMS_HPP_
#define EGALSEQ_AXIOMS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "egalseq/model.hpp"
#include "egalseq/oracle.hpp"
#include "egalseq/rule_id.hpp"
#include "egalseq/solver.hpp"

namespace egalseq::axioms {

enum class Property {
  kSafeConcatenation,
  kSafeUnion,
  kSubConsistency,
  kPareto,
  kIndependentGroups,
};

inline constexpr std::array<Property, 5> kAllProperties = {
    Property::kSafeConcatenation, Property::kSafeUnion, Property::kSubConsistency,
    Property::kPareto, Property::kIndependentGroups};

std::string_view property_name(Property p);
Property parse_property(std::string_view name);

// Whether the rule satisfies the property for every election, so that a
// violated verdict would be a bug rather than a finding.
bool holds_in_general(RuleId rule, Property p);

enum class Verdict { kHolds, kViolated, kHoldsVacuous, kSkipped };
std::string_view verdict_name(Verdict v);

struct WitnessItem {
  std::string role;  // e.g. "winner", "dominated-by", "pair-left"
  std::vector<std::vector<std::string>> committees;
};

struct AxiomVerdict {
  Property property = Property::kSafeConcatenation;
  RuleId rule = RuleId::kSum;
  Verdict verdict = Verdict::kSkipped;
  std::vector<WitnessItem> witness;  // nonempty when violated
  std::string skipped_reason;

  bool holds() const { return verdict == Verdict::kHolds || verdict == Verdict::kHoldsVacuous; }
};

// One row of a verdict table.
nlohmann::ordered_json verdict_to_json(const AxiomVerdict& v,
                                       const std::vector<std::string>& instance_ids);

struct AxiomConfig {
  solver::SolveConfig solve;
  // Pareto checks scan R_vld directly when it has at most this many
  // sequences and otherwise search for a dominating sequence per winner.
  std::uint64_t pareto_scan_limit = 200'000;
};

// Levels of e1 followed by levels of e2; agent lists must be identical.
Election concat_elections(const Election& e1, const Election& e2);

// Disjoint agents, same number of levels. Per level the candidates of e1
// followed by the candidates of e2 not already present (matched by id),
// k_t summed, and zero utility for candidates of the other election.
Election union_elections(const Election& e1, const Election& e2);

// Same candidates per level and same k_t, disjoint agents: agents of e1 then
// e2, candidates in e1's order.
Election merge_agents(const Election& e1, const Election& e2);

// Independent groups glued together: the agents of all parts, the levels of
// part 1 followed by those of part 2 and so on, zero utility for agents
// outside the part that owns a level. Agent ids must be distinct.
Election glue_groups(const std::vector<Election>& parts);

// Copy of e with every agent id and every candidate id prefixed, so that
// elections from different sources can be combined without id clashes.
Election prefix_ids(const Election& e, std::string_view agent_prefix,
                    std::string_view candidate_prefix);

// Partition of the agents and contiguous level blocks such that within block
// s only agents of part s have positive utility.
struct Grouping {
  std::vector<std::vector<std::size_t>> agent_parts;
  // Exclusive end of each block; the last entry is tau.
  std::vector<std::size_t> level_cuts;

  std::size_t size() const { return agent_parts.size(); }
  std::size_t block_begin(std::size_t s) const { return s == 0 ? 0 : level_cuts[s - 1]; }
  std::size_t block_end(std::size_t s) const { return level_cuts[s]; }
};

// The finest grouping. Agents with no positive utility anywhere join the
// first part; blocks where nobody has positive utility are merged into a
// neighbor. A single part means the election is not groupable.
Grouping detect_grouping(const Election& e);

// Throws DataError unless g satisfies the grouping conditions for e.
void check_grouping(const Election& e, const Grouping& g);

// E_s: the agents of part s voting on the levels of block s.
Election sub_election(const Election& e, const Grouping& g, std::size_t s);

// Committee-wise union of sequences of e1 and e2 mapped into union_elections'
// candidate indices.
CommitteeSequence union_sequence(const Election& e1, const Election& e2, const Election& merged,
                                 const CommitteeSequence& x1, const CommitteeSequence& x2);

AxiomVerdict check_safe_concatenation(const Election& e1, const Election& e2, RuleId rule,
                                      const AxiomConfig& config = {});
AxiomVerdict check_safe_union(const Election& e1, const Election& e2, RuleId rule,
                              const AxiomConfig& config = {});
AxiomVerdict check_sub_consistency(const Election& e1, const Election& e2, RuleId rule,
                                   const AxiomConfig& config = {});
AxiomVerdict check_pareto(const Election& e, RuleId rule, const AxiomConfig& config = {});
AxiomVerdict check_independent_groups(const Election& e, RuleId rule,
                                      const AxiomConfig& config = {});

}  // namespace egalseq::axioms

#endif  // EGALSEQ_AXIOMS_HPP_
