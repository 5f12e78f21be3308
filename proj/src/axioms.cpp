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

#include "egalseq/axioms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "egalseq/rules.hpp"

namespace egalseq::axioms {

std::string_view property_name(Property p) {
  switch (p) {
    case Property::kSafeConcatenation: return "safe-concatenation";
    case Property::kSafeUnion: return "safe-union";
    case Property::kSubConsistency: return "sub-consistency";
    case Property::kPareto: return "pareto";
    case Property::kIndependentGroups: return "independent-groups";
  }
  return "?";
}

Property parse_property(std::string_view name) {
  for (std::size_t i = 0; i < kAllProperties.size(); ++i) {
    if (property_name(kAllProperties[i]) == name || "P" + std::to_string(i + 1) == name) {
      return kAllProperties[i];
    }
  }
  throw DataError("unknown property: " + std::string(name));
}

bool holds_in_general(RuleId rule, Property p) {
  switch (rule) {
    case RuleId::kLex:
      return true;
    case RuleId::kSum:
      return p != Property::kSafeUnion;
    case RuleId::kEgal:
      return p == Property::kSafeConcatenation || p == Property::kSafeUnion ||
             p == Property::kSubConsistency;
    case RuleId::kALS:
      return p == Property::kSafeConcatenation || p == Property::kSafeUnion;
    case RuleId::kASL:
      return p == Property::kSafeConcatenation || p == Property::kSafeUnion ||
             p == Property::kPareto;
    case RuleId::kGreedy:
      return p == Property::kIndependentGroups;
  }
  return false;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kViolated: return "violated";
    case Verdict::kHoldsVacuous: return "holds-vacuous";
    case Verdict::kSkipped: return "skipped";
  }
  return "?";
}

nlohmann::ordered_json verdict_to_json(const AxiomVerdict& v,
                                       const std::vector<std::string>& instance_ids) {
  nlohmann::ordered_json row;
  row["instances"] = instance_ids;
  row["rule"] = rule_name(v.rule);
  row["property"] = property_name(v.property);
  row["verdict"] = verdict_name(v.verdict);
  if (!v.skipped_reason.empty()) row["reason"] = v.skipped_reason;
  if (!v.witness.empty()) {
    auto& w = row["witness"];
    for (const auto& item : v.witness) {
      w.push_back({{"role", item.role}, {"committees", item.committees}});
    }
  }
  return row;
}

namespace {

ElectionMeta combined_meta(const Election& e1, const Election& e2, std::string_view op) {
  ElectionMeta meta;
  meta.source = std::string(op) + "(" + e1.meta().source + "," + e2.meta().source + ")";
  meta.instance_class = e1.meta().instance_class == e2.meta().instance_class
                            ? e1.meta().instance_class
                            : "mixed";
  meta.kappa_rule = e1.meta().kappa_rule == e2.meta().kappa_rule ? e1.meta().kappa_rule : "";
  return meta;
}

void require_disjoint_agents(const Election& e1, const Election& e2) {
  std::set<std::string> ids(e1.agents().begin(), e1.agents().end());
  for (const auto& a : e2.agents()) {
    if (ids.contains(a)) throw DataError("agent sets overlap: " + a);
  }
}

std::vector<std::string> joined_agents(const Election& e1, const Election& e2) {
  std::vector<std::string> agents = e1.agents();
  agents.insert(agents.end(), e2.agents().begin(), e2.agents().end());
  return agents;
}

}  // namespace

Election concat_elections(const Election& e1, const Election& e2) {
  if (e1.agents() != e2.agents()) throw DataError("concatenation needs identical agent lists");
  std::vector<Level> levels = e1.levels();
  levels.insert(levels.end(), e2.levels().begin(), e2.levels().end());
  return Election(e1.agents(), std::move(levels), combined_meta(e1, e2, "concat"));
}

Election union_elections(const Election& e1, const Election& e2) {
  if (e1.num_levels() != e2.num_levels()) throw DataError("union needs equal numbers of levels");
  require_disjoint_agents(e1, e2);
  const std::size_t n1 = e1.num_agents(), n2 = e2.num_agents();
  std::vector<Level> levels;
  for (std::size_t t = 0; t < e1.num_levels(); ++t) {
    Level lv;
    lv.name = e1.level(t).name;
    lv.candidates = e1.level(t).candidates;
    std::vector<std::size_t> where2;
    for (const auto& c : e2.level(t).candidates) {
      auto it = std::find(lv.candidates.begin(), lv.candidates.end(), c);
      where2.push_back(static_cast<std::size_t>(it - lv.candidates.begin()));
      if (it == lv.candidates.end()) lv.candidates.push_back(c);
    }
    const std::size_t m = lv.candidates.size();
    lv.k = e1.k(t) + e2.k(t);
    lv.utility.assign((n1 + n2) * m, 0);
    for (std::size_t a = 0; a < n1; ++a) {
      for (std::size_t c = 0; c < e1.num_candidates(t); ++c) lv.utility[a * m + c] = e1.utility(t, a, c);
    }
    for (std::size_t a = 0; a < n2; ++a) {
      for (std::size_t c = 0; c < e2.num_candidates(t); ++c) {
        lv.utility[(n1 + a) * m + where2[c]] = e2.utility(t, a, c);
      }
    }
    levels.push_back(std::move(lv));
  }
  return Election(joined_agents(e1, e2), std::move(levels), combined_meta(e1, e2, "union"));
}

Election merge_agents(const Election& e1, const Election& e2) {
  if (e1.num_levels() != e2.num_levels()) throw DataError("merge needs equal numbers of levels");
  require_disjoint_agents(e1, e2);
  const std::size_t n1 = e1.num_agents(), n2 = e2.num_agents();
  std::vector<Level> levels;
  for (std::size_t t = 0; t < e1.num_levels(); ++t) {
    const Level& l1 = e1.level(t);
    const Level& l2 = e2.level(t);
    if (l1.k != l2.k) throw DataError("merge needs equal committee sizes");
    auto s1 = l1.candidates, s2 = l2.candidates;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) throw DataError("merge needs the same candidates on every level");
    Level lv = l1;
    const std::size_t m = lv.candidates.size();
    lv.utility.resize((n1 + n2) * m);
    for (std::size_t a = 0; a < n2; ++a) {
      for (std::size_t c = 0; c < m; ++c) {
        lv.utility[(n1 + a) * m + e1.candidate_index(t, l2.candidates[c])] = e2.utility(t, a, c);
      }
    }
    levels.push_back(std::move(lv));
  }
  return Election(joined_agents(e1, e2), std::move(levels), combined_meta(e1, e2, "merge"));
}

Election prefix_ids(const Election& e, std::string_view agent_prefix,
                    std::string_view candidate_prefix) {
  std::vector<std::string> agents;
  for (const auto& a : e.agents()) agents.push_back(std::string(agent_prefix) + a);
  std::vector<Level> levels = e.levels();
  for (auto& lv : levels) {
    for (auto& c : lv.candidates) c = std::string(candidate_prefix) + c;
  }
  return Election(std::move(agents), std::move(levels), e.meta());
}

Election glue_groups(const std::vector<Election>& parts) {
  if (parts.empty()) throw DataError("nothing to glue");
  std::vector<std::string> agents;
  std::set<std::string> seen;
  std::vector<std::size_t> offset;
  for (const auto& e : parts) {
    offset.push_back(agents.size());
    for (const auto& a : e.agents()) {
      if (!seen.insert(a).second) throw DataError("agent ids of glued groups overlap: " + a);
      agents.push_back(a);
    }
  }
  const std::size_t n = agents.size();
  std::vector<Level> levels;
  std::string source = "glue(";
  for (std::size_t s = 0; s < parts.size(); ++s) {
    const Election& e = parts[s];
    source += (s ? "," : "") + e.meta().source;
    for (std::size_t t = 0; t < e.num_levels(); ++t) {
      Level lv = e.level(t);
      const std::size_t m = lv.candidates.size();
      lv.utility.assign(n * m, 0);
      for (std::size_t a = 0; a < e.num_agents(); ++a) {
        auto row = e.row(t, a);
        std::copy(row.begin(), row.end(), lv.utility.begin() + static_cast<std::ptrdiff_t>((offset[s] + a) * m));
      }
      levels.push_back(std::move(lv));
    }
  }
  ElectionMeta meta = parts.front().meta();
  meta.source = source + ")";
  return Election(std::move(agents), std::move(levels), std::move(meta));
}

Grouping detect_grouping(const Election& e) {
  const std::size_t n = e.num_agents(), tau = e.num_levels();
  Grouping g;
  if (tau == 0) {
    g.agent_parts.emplace_back(n);
    std::iota(g.agent_parts[0].begin(), g.agent_parts[0].end(), std::size_t{0});
    g.level_cuts = {0};
    return g;
  }
  std::vector<std::vector<char>> support(tau, std::vector<char>(n, 0));
  for (std::size_t t = 0; t < tau; ++t) {
    for (std::size_t a = 0; a < n; ++a) {
      for (Utility u : e.row(t, a)) {
        if (u > 0) {
          support[t][a] = 1;
          break;
        }
      }
    }
  }
  // A cut after level t is valid when no agent has positive utility on both
  // sides of it.
  std::vector<char> suffix(n, 0);
  std::vector<std::vector<char>> suffixes(tau + 1, suffix);
  for (std::size_t t = tau; t-- > 0;) {
    for (std::size_t a = 0; a < n; ++a) suffixes[t][a] = suffixes[t + 1][a] | support[t][a];
  }
  std::vector<std::size_t> cuts;
  std::vector<char> prefix(n, 0);
  for (std::size_t t = 0; t + 1 < tau; ++t) {
    bool ok = true;
    for (std::size_t a = 0; a < n; ++a) {
      prefix[a] |= support[t][a];
      if (prefix[a] && suffixes[t + 1][a]) ok = false;
    }
    if (ok) cuts.push_back(t + 1);
  }
  cuts.push_back(tau);

  // Block supports; empty blocks are folded into a neighbor.
  std::vector<std::pair<std::size_t, std::vector<char>>> blocks;
  std::size_t begin = 0;
  for (std::size_t end : cuts) {
    std::vector<char> s(n, 0);
    for (std::size_t t = begin; t < end; ++t) {
      for (std::size_t a = 0; a < n; ++a) s[a] |= support[t][a];
    }
    const bool empty = std::none_of(s.begin(), s.end(), [](char c) { return c; });
    if (empty && !blocks.empty()) {
      blocks.back().first = end;
    } else if (!blocks.empty() &&
               std::none_of(blocks.back().second.begin(), blocks.back().second.end(),
                            [](char c) { return c; })) {
      blocks.back() = {end, std::move(s)};
    } else {
      blocks.emplace_back(end, std::move(s));
    }
    begin = end;
  }

  std::vector<char> assigned(n, 0);
  for (const auto& [end, s] : blocks) {
    std::vector<std::size_t> part;
    for (std::size_t a = 0; a < n; ++a) {
      if (s[a]) {
        part.push_back(a);
        assigned[a] = 1;
      }
    }
    g.agent_parts.push_back(std::move(part));
    g.level_cuts.push_back(end);
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!assigned[a]) g.agent_parts[0].push_back(a);
  }
  std::sort(g.agent_parts[0].begin(), g.agent_parts[0].end());
  return g;
}

void check_grouping(const Election& e, const Grouping& g) {
  const std::size_t n = e.num_agents();
  if (g.agent_parts.empty() || g.agent_parts.size() != g.level_cuts.size()) {
    throw DataError("grouping needs one level block per agent part");
  }
  std::vector<std::size_t> owner(n, SIZE_MAX);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (g.agent_parts[s].empty()) throw DataError("empty agent part");
    for (auto a : g.agent_parts[s]) {
      if (a >= n || owner[a] != SIZE_MAX) throw DataError("agent parts must partition the agents");
      owner[a] = s;
    }
    if (g.block_end(s) <= g.block_begin(s) && e.num_levels() > 0) {
      throw DataError("level blocks must be nonempty");
    }
  }
  if (std::count(owner.begin(), owner.end(), SIZE_MAX) > 0) {
    throw DataError("agent parts must cover every agent");
  }
  if (g.level_cuts.back() != e.num_levels()) throw DataError("last block must end at tau");
  for (std::size_t s = 0; s < g.size(); ++s) {
    for (std::size_t t = g.block_begin(s); t < g.block_end(s); ++t) {
      for (std::size_t a = 0; a < n; ++a) {
        if (owner[a] == s) continue;
        for (Utility u : e.row(t, a)) {
          if (u > 0) throw DataError("agent outside the block's part has positive utility");
        }
      }
    }
  }
}

Election sub_election(const Election& e, const Grouping& g, std::size_t s) {
  const auto& part = g.agent_parts.at(s);
  std::vector<std::string> agents;
  for (auto a : part) agents.push_back(e.agents()[a]);
  std::vector<Level> levels;
  for (std::size_t t = g.block_begin(s); t < g.block_end(s); ++t) {
    Level lv = e.level(t);
    lv.utility.clear();
    for (auto a : part) {
      auto row = e.row(t, a);
      lv.utility.insert(lv.utility.end(), row.begin(), row.end());
    }
    levels.push_back(std::move(lv));
  }
  ElectionMeta meta = e.meta();
  meta.source += "#group" + std::to_string(s + 1);
  return Election(std::move(agents), std::move(levels), std::move(meta));
}

CommitteeSequence union_sequence(const Election& e1, const Election& e2, const Election& merged,
                                 const CommitteeSequence& x1, const CommitteeSequence& x2) {
  check_consistent(e1, x1);
  check_consistent(e2, x2);
  CommitteeSequence x = empty_sequence(merged);
  for (std::size_t t = 0; t < merged.num_levels(); ++t) {
    std::set<std::size_t> xt;
    for (auto c : x1.committees[t]) xt.insert(merged.candidate_index(t, e1.level(t).candidates[c]));
    for (auto c : x2.committees[t]) xt.insert(merged.candidate_index(t, e2.level(t).candidates[c]));
    x.committees[t].assign(xt.begin(), xt.end());
  }
  return x;
}

namespace {

struct Winners {
  std::optional<WinnerSet> set;
  std::string reason;
};

Winners winners_of(const Election& e, RuleId rule, const AxiomConfig& config) {
  try {
    WinnerSet w = rules::all_winners(e, rule, config.solve);
    if (!w.complete) {
      return {std::nullopt, "winner set exceeds cap " + std::to_string(config.solve.winner_cap)};
    }
    return {std::move(w), ""};
  } catch (const BudgetExceeded& err) {
    return {std::nullopt, err.what()};
  }
}

AxiomVerdict skipped(Property p, RuleId rule, std::string reason) {
  AxiomVerdict v;
  v.property = p;
  v.rule = rule;
  v.verdict = Verdict::kSkipped;
  v.skipped_reason = std::move(reason);
  return v;
}

AxiomVerdict decided(Property p, RuleId rule, bool holds, std::vector<WitnessItem> witness = {}) {
  AxiomVerdict v;
  v.property = p;
  v.rule = rule;
  v.verdict = holds ? Verdict::kHolds : Verdict::kViolated;
  if (!holds) v.witness = std::move(witness);
  return v;
}

WitnessItem item(std::string role, const Election& e, const CommitteeSequence& x) {
  return {std::move(role), sequence_to_ids(e, x)};
}

// Shared by safe concatenation and safe union: the best merged winner must be
// at least as good for the worst-off agent as the best combined pair.
template <class Combine>
AxiomVerdict check_merge_property(Property p, const Election& e1, const Election& e2,
                                  const Election& merged, RuleId rule,
                                  const AxiomConfig& config, Combine combine) {
  Winners w1 = winners_of(e1, rule, config);
  if (!w1.set) return skipped(p, rule, "left: " + w1.reason);
  Winners w2 = winners_of(e2, rule, config);
  if (!w2.set) return skipped(p, rule, "right: " + w2.reason);
  Winners w = winners_of(merged, rule, config);
  if (!w.set) return skipped(p, rule, "merged: " + w.reason);

  std::optional<Score> lhs;
  const CommitteeSequence* best_merged = nullptr;
  for (const auto& x : w.set->winners) {
    const Score s = score_agent_min(merged, x);
    if (!lhs || s > *lhs) {
      lhs = s;
      best_merged = &x;
    }
  }
  std::optional<Score> rhs;
  const CommitteeSequence *best1 = nullptr, *best2 = nullptr;
  for (const auto& x1 : w1.set->winners) {
    for (const auto& x2 : w2.set->winners) {
      const Score s = score_agent_min(merged, combine(x1, x2));
      if (!rhs || s > *rhs) {
        rhs = s;
        best1 = &x1;
        best2 = &x2;
      }
    }
  }
  const bool holds = *lhs >= *rhs;
  std::vector<WitnessItem> witness;
  if (!holds) {
    witness = {item("left-winner", e1, *best1), item("right-winner", e2, *best2),
               item("combined", merged, combine(*best1, *best2)),
               item("best-merged-winner", merged, *best_merged)};
  }
  return decided(p, rule, holds, std::move(witness));
}

// Sequence of `from` re-expressed in the candidate indices of `to`.
CommitteeSequence remap(const Election& from, const Election& to, const CommitteeSequence& x) {
  CommitteeSequence y = empty_sequence(to);
  for (std::size_t t = 0; t < to.num_levels(); ++t) {
    for (auto c : x.committees[t]) y.committees[t].push_back(to.candidate_index(t, from.level(t).candidates[c]));
    std::sort(y.committees[t].begin(), y.committees[t].end());
  }
  return y;
}

}  // namespace

AxiomVerdict check_safe_concatenation(const Election& e1, const Election& e2, RuleId rule,
                                      const AxiomConfig& config) {
  const Election merged = concat_elections(e1, e2);
  return check_merge_property(Property::kSafeConcatenation, e1, e2, merged, rule, config,
                              [](const CommitteeSequence& a, const CommitteeSequence& b) {
                                return concat(a, b);
                              });
}

AxiomVerdict check_safe_union(const Election& e1, const Election& e2, RuleId rule,
                              const AxiomConfig& config) {
  const Election merged = union_elections(e1, e2);
  return check_merge_property(Property::kSafeUnion, e1, e2, merged, rule, config,
                              [&](const CommitteeSequence& a, const CommitteeSequence& b) {
                                return union_sequence(e1, e2, merged, a, b);
                              });
}

AxiomVerdict check_sub_consistency(const Election& e1, const Election& e2, RuleId rule,
                                   const AxiomConfig& config) {
  const Property p = Property::kSubConsistency;
  const Election merged = merge_agents(e1, e2);
  Winners w1 = winners_of(e1, rule, config);
  if (!w1.set) return skipped(p, rule, "left: " + w1.reason);
  Winners w2 = winners_of(e2, rule, config);
  if (!w2.set) return skipped(p, rule, "right: " + w2.reason);
  std::vector<CommitteeSequence> common;
  for (const auto& x2 : w2.set->winners) {
    CommitteeSequence x = remap(e2, e1, x2);
    if (w1.set->contains(x)) common.push_back(std::move(x));
  }
  if (common.empty()) {
    AxiomVerdict v;
    v.property = p;
    v.rule = rule;
    v.verdict = Verdict::kHoldsVacuous;
    return v;
  }
  Winners w = winners_of(merged, rule, config);
  if (!w.set) return skipped(p, rule, "merged: " + w.reason);
  std::sort(common.begin(), common.end());
  for (const auto& x : common) {
    if (!w.set->contains(x)) {
      std::vector<WitnessItem> witness = {item("common-winner", merged, x)};
      if (!w.set->winners.empty()) witness.push_back(item("merged-winner", merged, w.set->winners.front()));
      return decided(p, rule, false, std::move(witness));
    }
  }
  return decided(p, rule, true);
}

AxiomVerdict check_pareto(const Election& e, RuleId rule, const AxiomConfig& config) {
  const Property p = Property::kPareto;
  Winners w = winners_of(e, rule, config);
  if (!w.set) return skipped(p, rule, w.reason);
  const auto count = oracle::count_valid(e);
  if (count && *count <= config.pareto_scan_limit) {
    std::vector<std::vector<Score>> scores;
    for (const auto& x : w.set->winners) scores.push_back(agent_scores(e, x));
    oracle::ValidSequenceStream stream(e, {*count, oracle::EnumerationBudget::OnExceed::kError});
    CommitteeSequence y;
    while (stream.next(y)) {
      const auto sy = agent_scores(e, y);
      for (std::size_t i = 0; i < scores.size(); ++i) {
        bool weakly = true, strictly = false;
        for (std::size_t a = 0; a < sy.size() && weakly; ++a) {
          if (sy[a] < scores[i][a]) weakly = false;
          if (sy[a] > scores[i][a]) strictly = true;
        }
        if (weakly && strictly) {
          return decided(p, rule, false,
                         {item("winner", e, w.set->winners[i]), item("dominated-by", e, y)});
        }
      }
    }
    return decided(p, rule, true);
  }
  try {
    for (const auto& x : w.set->winners) {
      if (auto y = solver::find_dominating(e, x, config.solve)) {
        return decided(p, rule, false, {item("winner", e, x), item("dominated-by", e, *y)});
      }
    }
  } catch (const BudgetExceeded& err) {
    return skipped(p, rule, err.what());
  }
  return decided(p, rule, true);
}

AxiomVerdict check_independent_groups(const Election& e, RuleId rule, const AxiomConfig& config) {
  const Property p = Property::kIndependentGroups;
  const Grouping g = detect_grouping(e);
  if (g.size() < 2) return skipped(p, rule, "trivial grouping");
  Winners w = winners_of(e, rule, config);
  if (!w.set) return skipped(p, rule, "whole: " + w.reason);
  std::vector<Election> subs;
  std::vector<WinnerSet> parts;
  for (std::size_t s = 0; s < g.size(); ++s) {
    subs.push_back(sub_election(e, g, s));
    Winners ws = winners_of(subs.back(), rule, config);
    if (!ws.set) return skipped(p, rule, "group " + std::to_string(s + 1) + ": " + ws.reason);
    parts.push_back(std::move(*ws.set));
  }
  // Blocks are contiguous, so the product in odometer order is canonical.
  const std::size_t limit = w.set->winners.size() + 1;
  std::vector<CommitteeSequence> product;
  std::vector<std::size_t> pick(parts.size(), 0);
  while (product.size() < limit) {
    CommitteeSequence x;
    for (std::size_t s = 0; s < parts.size(); ++s) {
      const auto& sub = parts[s].winners[pick[s]].committees;
      x.committees.insert(x.committees.end(), sub.begin(), sub.end());
    }
    product.push_back(std::move(x));
    std::size_t s = parts.size();
    while (s-- > 0) {
      if (++pick[s] < parts[s].winners.size()) break;
      pick[s] = 0;
    }
    if (s == static_cast<std::size_t>(-1)) break;
  }
  for (const auto& x : product) {
    if (!w.set->contains(x)) return decided(p, rule, false, {item("product-only", e, x)});
  }
  for (const auto& x : w.set->winners) {
    if (!std::binary_search(product.begin(), product.end(), x)) {
      return decided(p, rule, false, {item("whole-only", e, x)});
    }
  }
  return decided(p, rule, true);
}

}  // namespace egalseq::axioms
