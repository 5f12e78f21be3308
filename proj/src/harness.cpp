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

#include "egalseq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "egalseq/io.hpp"
#include "egalseq/ingest.hpp"
#include "egalseq/rules.hpp"

namespace egalseq::harness {

using nlohmann::ordered_json;
using axioms::AxiomVerdict;
using axioms::Property;
using axioms::Verdict;

Corpus load_corpus(const std::filesystem::path& dir, std::optional<std::size_t> kappa_l) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw DataError("not a corpus directory: " + dir.string());
  }
  Corpus corpus;
  for (const auto& path : io::list_corpus(dir)) {
    try {
      Election e = io::read_election(path);
      if (kappa_l) e = ingest::kappa_rule(e, *kappa_l);
      corpus.instances.push_back({path.filename().string(), std::move(e)});
    } catch (const std::exception& err) {
      corpus.failures.emplace_back(path.filename().string(), err.what());
    }
  }
  if (corpus.instances.empty() && corpus.failures.empty()) {
    throw DataError("no elections in " + dir.string());
  }
  return corpus;
}

// ---------------------------------------------------------------- score table

std::string_view score_name(ScoreKind s) {
  switch (s) {
    case ScoreKind::kLex: return "lex";
    case ScoreKind::kAgentMin: return "agent_min";
    case ScoreKind::kLevelMin: return "level_min";
    case ScoreKind::kSum: return "sum";
  }
  return "?";
}

namespace {

Score triple_value(ScoreKind s, const ScoreTriple& v) {
  switch (s) {
    case ScoreKind::kAgentMin: return v.agent_min;
    case ScoreKind::kLevelMin: return v.level_min;
    default: return v.total;
  }
}

bool is_optimal(ScoreKind s, const InstanceScores& inst, RuleId rule) {
  if (s == ScoreKind::kLex) return inst.achieved_lex.at(rule) == inst.optimum_lex;
  return triple_value(s, inst.achieved.at(rule)) == triple_value(s, inst.optimum);
}

long round_half_up(double x) { return static_cast<long>(std::floor(x + 0.5)); }

template <typename Task>
void parallel_for(std::size_t count, int jobs, Task&& task) {
#pragma omp parallel for schedule(dynamic) num_threads(std::max(jobs, 1))
  for (std::size_t i = 0; i < count; ++i) task(i);
}

}  // namespace

double percent_of_optimum(ScoreKind s, const InstanceScores& inst, RuleId rule) {
  if (s == ScoreKind::kLex) {
    const BigInt& got = inst.achieved_lex.at(rule);
    if (got == inst.optimum_lex) return 100.0;
    // Both are positive: every agent is counted somewhere in the histogram.
    const BigInt scaled = inst.optimum_lex * BigInt(1'000'000'000'000LL) / got;
    return scaled.convert_to<double>() / 1e10;
  }
  const Score opt = triple_value(s, inst.optimum);
  const Score got = triple_value(s, inst.achieved.at(rule));
  if (opt == 0) return 100.0;
  return 100.0 * static_cast<double>(got) / static_cast<double>(opt);
}

ScoreTable score_table(const std::vector<CorpusInstance>& corpus, const std::vector<RuleId>& rules,
                       const RunConfig& config) {
  if (corpus.empty()) throw DataError("empty corpus");
  std::vector<RuleId> needed = rules;
  for (RuleId r : {RuleId::kSum, RuleId::kLex, RuleId::kEgal}) {
    if (std::find(needed.begin(), needed.end(), r) == needed.end()) needed.push_back(r);
  }

  std::vector<std::optional<InstanceScores>> results(corpus.size());
  std::vector<std::string> errors(corpus.size());
  parallel_for(corpus.size(), config.jobs, [&](std::size_t i) {
    const Election& e = corpus[i].election;
    InstanceScores inst;
    inst.name = corpus[i].name;
    try {
      for (RuleId r : needed) {
        const auto start = std::chrono::steady_clock::now();
        const CommitteeSequence x = rules::single_winner(e, r, config.solve);
        const auto stop = std::chrono::steady_clock::now();
        inst.seconds[r] = std::chrono::duration<double>(stop - start).count();
        inst.achieved[r] = score_triple(e, x);
        inst.achieved_lex[r] = lex_score_exact(e, x);
      }
      inst.optimum.agent_min = inst.achieved[RuleId::kEgal].agent_min;
      inst.optimum.level_min = inst.achieved[RuleId::kSum].level_min;
      inst.optimum.total = inst.achieved[RuleId::kSum].total;
      inst.optimum_lex = inst.achieved_lex[RuleId::kLex];
      results[i] = std::move(inst);
    } catch (const std::exception& err) {
      errors[i] = err.what();
    }
  });

  ScoreTable table;
  table.rules = rules;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!results[i]) {
      table.failures.emplace_back(corpus[i].name, errors[i]);
      continue;
    }
    const InstanceScores& inst = *results[i];
    if (inst.achieved.at(RuleId::kLex).agent_min != inst.optimum.agent_min) {
      table.consistency_violations.push_back(inst.name);
    }
    table.instances.push_back(inst);
  }

  const double count = static_cast<double>(table.instances.size());
  for (RuleId r : rules) {
    ScoreTableRow row;
    row.rule = r;
    for (std::size_t s = 0; s < kAllScores.size(); ++s) {
      std::size_t hits = 0;
      double ratio_sum = 0;
      for (const auto& inst : table.instances) {
        hits += is_optimal(kAllScores[s], inst, r) ? 1 : 0;
        ratio_sum += percent_of_optimum(kAllScores[s], inst, r);
      }
      row.percent_optimal[s] = count == 0 ? 0.0 : 100.0 * static_cast<double>(hits) / count;
      row.mean_percent[s] = count == 0 ? 0.0 : ratio_sum / count;
    }
    table.rows.push_back(row);
  }
  return table;
}

std::string score_table_csv(const ScoreTable& table) {
  std::ostringstream out;
  out << "rule";
  for (ScoreKind s : kAllScores) {
    out << ',' << score_name(s) << "_optimal_pct," << score_name(s) << "_mean_pct";
  }
  out << '\n';
  for (const auto& row : table.rows) {
    out << rule_name(row.rule);
    for (std::size_t s = 0; s < kAllScores.size(); ++s) {
      out << ',' << round_half_up(row.percent_optimal[s]) << ','
          << round_half_up(row.mean_percent[s]);
    }
    out << '\n';
  }
  return out.str();
}

ordered_json score_table_json(const ScoreTable& table, const RunConfig& config) {
  ordered_json doc;
  doc["settings"] = {
      {"winner_cap", config.solve.winner_cap},
      {"time_limit_ms", config.solve.time_budget.count()},
      {"zero_optimum", "a rule reaching an optimum of 0 counts as 100 percent"},
      {"lex_ratio", "optimal lex score divided by the achieved lex score"},
  };
  doc["instances_used"] = table.instances.size();
  ordered_json failures = ordered_json::array();
  for (const auto& [name, why] : table.failures) failures.push_back({{"instance", name}, {"error", why}});
  doc["failures"] = std::move(failures);
  doc["consistency_violations"] = table.consistency_violations;

  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r;
    r["rule"] = rule_name(row.rule);
    for (std::size_t s = 0; s < kAllScores.size(); ++s) {
      r[std::string(score_name(kAllScores[s]))] = {{"optimal_pct", row.percent_optimal[s]},
                                                   {"mean_pct", row.mean_percent[s]}};
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);

  ordered_json per_instance = ordered_json::array();
  for (const auto& inst : table.instances) {
    ordered_json j;
    j["instance"] = inst.name;
    j["optimum"] = {{"lex", inst.optimum_lex.str()},
                    {"agent_min", inst.optimum.agent_min},
                    {"level_min", inst.optimum.level_min},
                    {"sum", inst.optimum.total}};
    ordered_json achieved;
    for (RuleId r : table.rules) {
      const ScoreTriple& v = inst.achieved.at(r);
      achieved[std::string(rule_name(r))] = {{"lex", inst.achieved_lex.at(r).str()},
                                             {"agent_min", v.agent_min},
                                             {"level_min", v.level_min},
                                             {"sum", v.total}};
    }
    j["achieved"] = std::move(achieved);
    per_instance.push_back(std::move(j));
  }
  doc["instances"] = std::move(per_instance);
  return doc;
}

void write_plot_data(const ScoreTable& table, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (RuleId r : table.rules) {
    for (ScoreKind s : kAllScores) {
      std::ofstream out(dir / (std::string(rule_name(r)) + "_" + std::string(score_name(s)) + ".dat"));
      out << "# instance optimum achieved percent\n";
      for (const auto& inst : table.instances) {
        out << inst.name << ' ';
        if (s == ScoreKind::kLex) {
          out << inst.optimum_lex.str() << ' ' << inst.achieved_lex.at(r).str();
        } else {
          out << triple_value(s, inst.optimum) << ' ' << triple_value(s, inst.achieved.at(r));
        }
        out << ' ' << percent_of_optimum(s, inst, r) << '\n';
      }
    }
    std::ofstream out(dir / (std::string(rule_name(r)) + "_seconds.dat"));
    out << "# instance seconds\n";
    for (const auto& inst : table.instances) out << inst.name << ' ' << inst.seconds.at(r) << '\n';
  }
}

// ---------------------------------------------------------------- axiom scan

Discard main_discard(const Election& e, Property p, const std::vector<RuleId>& rules,
                     const DiscardPolicy& policy, const solver::SolveConfig& solve) {
  solver::SolveConfig cfg = solve;
  cfg.winner_cap = policy.winner_cap;
  try {
    const auto violating = [&](RuleId r) {
      return std::find(rules.begin(), rules.end(), r) != rules.end() &&
             !axioms::holds_in_general(r, p);
    };
    if (violating(RuleId::kGreedy)) {
      solver::SolveConfig greedy_cfg = cfg;
      greedy_cfg.time_budget = policy.greedy_all_time_limit;
      const auto g = rules::rule_greedy_all(e, greedy_cfg);
      if (g.timed_out) return Discard::kCondition1;
      if (g.winners.winners.size() >= policy.winner_cap) return Discard::kCondition2;
    }
    for (RuleId r : rules) {
      if (r == RuleId::kGreedy || !violating(r)) continue;
      if (rules::all_winners(e, r, cfg).winners.size() >= policy.winner_cap) {
        return Discard::kCondition2;
      }
    }
  } catch (const std::exception&) {
    return Discard::kError;
  }
  return Discard::kNone;
}

bool has_dead_level(const Election& e) {
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    bool alive = false;
    for (std::size_t a = 0; a < e.num_agents() && !alive; ++a) {
      for (Utility u : e.row(t, a)) alive = alive || u >= 1;
    }
    if (!alive) return true;
  }
  return false;
}

std::pair<Election, Election> split_agents(const Election& e, std::size_t j) {
  const std::size_t n = e.num_agents();
  if (j == 0 || j >= n) throw DataError("agent split point out of range");
  const auto part = [&](std::size_t lo, std::size_t hi) {
    std::vector<std::string> agents(e.agents().begin() + static_cast<std::ptrdiff_t>(lo),
                                    e.agents().begin() + static_cast<std::ptrdiff_t>(hi));
    std::vector<Level> levels = e.levels();
    for (std::size_t t = 0; t < levels.size(); ++t) {
      const std::size_t m = levels[t].candidates.size();
      levels[t].utility.assign(e.level(t).utility.begin() + static_cast<std::ptrdiff_t>(lo * m),
                               e.level(t).utility.begin() + static_cast<std::ptrdiff_t>(hi * m));
    }
    return Election(std::move(agents), std::move(levels), e.meta());
  };
  return {part(0, j), part(j, n)};
}

std::pair<Election, Election> split_levels(const Election& e, std::size_t j) {
  const std::size_t tau = e.num_levels();
  if (j == 0 || j >= tau) throw DataError("level split point out of range");
  std::vector<Level> first(e.levels().begin(), e.levels().begin() + static_cast<std::ptrdiff_t>(j));
  std::vector<Level> second(e.levels().begin() + static_cast<std::ptrdiff_t>(j), e.levels().end());
  return {Election(e.agents(), std::move(first), e.meta()),
          Election(e.agents(), std::move(second), e.meta())};
}

namespace {

enum class UnitStatus { kConsidered, kCondition1, kCondition2, kOther };

struct UnitOutcome {
  UnitStatus status = UnitStatus::kOther;
  std::vector<std::string> ids;
  std::vector<AxiomVerdict> verdicts;  // one per evaluated rule
};

UnitStatus worst(std::initializer_list<Discard> ds) {
  UnitStatus s = UnitStatus::kConsidered;
  for (Discard d : ds) {
    if (d == Discard::kCondition1) return UnitStatus::kCondition1;
    if (d == Discard::kError) s = UnitStatus::kOther;
    if (d == Discard::kCondition2 && s == UnitStatus::kConsidered) s = UnitStatus::kCondition2;
  }
  return s;
}

bool too_large(const Election& e, const DiscardPolicy& policy) {
  return e.num_agents() > policy.max_agents || e.total_candidates() > policy.max_candidates;
}

std::string tag(const std::string& name) { return name + "/"; }

}  // namespace

AxiomScanReport axiom_scan(const std::vector<CorpusInstance>& corpus, Property p,
                           const std::vector<RuleId>& rules, const ScanConfig& config) {
  const DiscardPolicy& policy = config.policy;
  axioms::AxiomConfig acfg;
  acfg.solve = config.run.solve;
  acfg.solve.winner_cap = policy.winner_cap;

  AxiomScanReport report;
  report.property = p;
  report.rules = rules;
  for (RuleId r : rules) report.tallies[r].universal = axioms::holds_in_general(r, p);
  report.instances_total = corpus.size();

  const bool size_filter = p == Property::kSubConsistency || p == Property::kIndependentGroups;
  const auto discard_of = [&](const Election& e) {
    return main_discard(e, p, rules, policy, config.run.solve);
  };

  // Instance filter.
  std::vector<int> status(corpus.size(), 0);  // 0 kept, 1 c1, 2 c2, 3 size, 4 other
  parallel_for(corpus.size(), config.run.jobs, [&](std::size_t i) {
    const Election& e = corpus[i].election;
    if (size_filter && too_large(e, policy)) {
      status[i] = 3;
      return;
    }
    switch (discard_of(e)) {
      case Discard::kNone: status[i] = 0; break;
      case Discard::kCondition1: status[i] = 1; break;
      case Discard::kCondition2: status[i] = 2; break;
      case Discard::kError: status[i] = 4; break;
    }
  });
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    switch (status[i]) {
      case 0: kept.push_back(i); break;
      case 1: ++report.instances_condition1; break;
      case 2: ++report.instances_condition2; break;
      case 3: ++report.instances_size; break;
      default: ++report.instances_other; break;
    }
  }
  report.instances_kept = kept.size();

  const auto evaluate = [&](UnitOutcome& out, const std::function<AxiomVerdict(RuleId)>& check) {
    for (RuleId r : rules) {
      if (axioms::holds_in_general(r, p) && !config.check_universal) continue;
      try {
        out.verdicts.push_back(check(r));
      } catch (const std::exception& err) {
        AxiomVerdict v;
        v.property = p;
        v.rule = r;
        v.verdict = Verdict::kSkipped;
        v.skipped_reason = err.what();
        out.verdicts.push_back(std::move(v));
      }
    }
  };

  // Each task yields one unit, except independent groups where a task builds
  // the 2-group instance and, if that survives, the 3-group one.
  std::vector<std::function<std::vector<UnitOutcome>()>> tasks;
  const auto pair_task = [&](std::size_t i, std::size_t j, bool by_levels) {
    return [&, i, j, by_levels]() {
      UnitOutcome out;
      const CorpusInstance& inst = corpus[i];
      out.ids = {inst.name + (by_levels ? "#levels:" : "#agents:") + std::to_string(j)};
      try {
        auto [e1, e2] = by_levels ? split_levels(inst.election, j) : split_agents(inst.election, j);
        if (has_dead_level(e1) || has_dead_level(e2)) {
          out.status = UnitStatus::kOther;
          return std::vector<UnitOutcome>{out};
        }
        out.status = worst({discard_of(e1), discard_of(e2)});
        if (out.status != UnitStatus::kConsidered) return std::vector<UnitOutcome>{out};
        evaluate(out, [&](RuleId r) {
          return by_levels ? axioms::check_safe_concatenation(e1, e2, r, acfg)
                           : axioms::check_sub_consistency(e1, e2, r, acfg);
        });
      } catch (const std::exception&) {
        out.status = UnitStatus::kOther;
      }
      return std::vector<UnitOutcome>{out};
    };
  };

  switch (p) {
    case Property::kPareto:
      for (std::size_t i : kept) {
        tasks.push_back([&, i]() {
          UnitOutcome out;
          out.ids = {corpus[i].name};
          out.status = UnitStatus::kConsidered;
          evaluate(out, [&](RuleId r) { return axioms::check_pareto(corpus[i].election, r, acfg); });
          return std::vector<UnitOutcome>{out};
        });
      }
      break;
    case Property::kSafeConcatenation:
      for (std::size_t i : kept) {
        for (std::size_t j = 1; j < corpus[i].election.num_levels(); ++j) {
          tasks.push_back(pair_task(i, j, true));
        }
      }
      break;
    case Property::kSubConsistency:
      for (std::size_t i : kept) {
        for (std::size_t j = 1; j < corpus[i].election.num_agents(); ++j) {
          tasks.push_back(pair_task(i, j, false));
        }
      }
      break;
    case Property::kSafeUnion: {
      std::map<std::size_t, std::vector<std::size_t>> by_tau;
      for (std::size_t i : kept) by_tau[corpus[i].election.num_levels()].push_back(i);
      for (const auto& [tau, members] : by_tau) {
        for (std::size_t x = 0; x < members.size(); ++x) {
          for (std::size_t y = x + 1; y < members.size() && y <= x + policy.union_followers; ++y) {
            const std::size_t i = members[x];
            const std::size_t j = members[y];
            tasks.push_back([&, i, j]() {
              UnitOutcome out;
              out.ids = {corpus[i].name, corpus[j].name};
              try {
                const Election e1 = axioms::prefix_ids(corpus[i].election, tag(corpus[i].name),
                                                       tag(corpus[i].name));
                const Election e2 = axioms::prefix_ids(corpus[j].election, tag(corpus[j].name),
                                                       tag(corpus[j].name));
                out.status = worst({discard_of(axioms::union_elections(e1, e2))});
                if (out.status == UnitStatus::kConsidered) {
                  evaluate(out, [&](RuleId r) { return axioms::check_safe_union(e1, e2, r, acfg); });
                }
              } catch (const std::exception&) {
                out.status = UnitStatus::kOther;
              }
              return std::vector<UnitOutcome>{out};
            });
          }
        }
      }
      break;
    }
    case Property::kIndependentGroups:
      for (std::size_t x = 0; x + 1 < kept.size(); ++x) {
        tasks.push_back([&, x]() {
          std::vector<UnitOutcome> outs;
          std::vector<Election> parts;
          std::vector<std::string> ids;
          for (std::size_t y = x; y < kept.size() && y <= x + 2; ++y) {
            const CorpusInstance& inst = corpus[kept[y]];
            parts.push_back(axioms::prefix_ids(inst.election, tag(inst.name), tag(inst.name)));
            ids.push_back(inst.name);
            if (parts.size() < 2) continue;
            UnitOutcome out;
            out.ids = ids;
            try {
              const Election glued = axioms::glue_groups(parts);
              if (too_large(glued, policy)) {
                out.status = UnitStatus::kOther;
              } else {
                out.status = worst({discard_of(glued)});
              }
              if (out.status == UnitStatus::kConsidered) {
                evaluate(out, [&](RuleId r) {
                  return axioms::check_independent_groups(glued, r, acfg);
                });
              }
            } catch (const std::exception&) {
              out.status = UnitStatus::kOther;
            }
            const bool go_on = out.status == UnitStatus::kConsidered;
            outs.push_back(std::move(out));
            if (!go_on) break;
          }
          return outs;
        });
      }
      break;
  }

  std::vector<std::vector<UnitOutcome>> outcomes(tasks.size());
  parallel_for(tasks.size(), config.run.jobs, [&](std::size_t i) { outcomes[i] = tasks[i](); });

  for (const auto& group : outcomes) {
    for (const auto& out : group) {
      ++report.units_generated;
      switch (out.status) {
        case UnitStatus::kConsidered: ++report.units_considered; break;
        case UnitStatus::kCondition1: ++report.units_condition1; break;
        case UnitStatus::kCondition2: ++report.units_condition2; break;
        case UnitStatus::kOther: ++report.units_other; break;
      }
      for (const auto& v : out.verdicts) {
        RuleTally& t = report.tallies[v.rule];
        switch (v.verdict) {
          case Verdict::kHolds: ++t.satisfied; break;
          case Verdict::kHoldsVacuous: ++t.satisfied_vacuous; break;
          case Verdict::kViolated:
            ++t.violated;
            report.witnesses.push_back(axioms::verdict_to_json(v, out.ids));
            break;
          case Verdict::kSkipped: ++t.skipped; break;
        }
      }
    }
  }
  return report;
}

ordered_json scan_report_json(const AxiomScanReport& r, const ScanConfig& config) {
  ordered_json doc;
  doc["property"] = axioms::property_name(r.property);
  doc["settings"] = {
      {"winner_cap", config.policy.winner_cap},
      {"greedy_all_time_limit_ms", config.policy.greedy_all_time_limit.count()},
      {"solver_time_limit_ms", config.run.solve.time_budget.count()},
      {"max_agents", config.policy.max_agents},
      {"max_candidates", config.policy.max_candidates},
      {"union_followers", config.policy.union_followers},
      {"check_universal", config.check_universal},
  };
  doc["instances"] = {{"total", r.instances_total},
                      {"kept", r.instances_kept},
                      {"condition1", r.instances_condition1},
                      {"condition2", r.instances_condition2},
                      {"size", r.instances_size},
                      {"other", r.instances_other}};
  doc["units"] = {{"generated", r.units_generated},
                  {"considered", r.units_considered},
                  {"condition1", r.units_condition1},
                  {"condition2", r.units_condition2},
                  {"other", r.units_other}};
  ordered_json rules = ordered_json::array();
  for (RuleId id : r.rules) {
    const RuleTally& t = r.tallies.at(id);
    ordered_json row;
    row["rule"] = rule_name(id);
    row["holds_in_general"] = t.universal;
    row["satisfied"] = t.satisfied;
    row["satisfied_vacuous"] = t.satisfied_vacuous;
    row["violated"] = t.violated;
    row["skipped"] = t.skipped;
    rules.push_back(std::move(row));
  }
  doc["rules"] = std::move(rules);
  doc["witnesses"] = r.witnesses;
  return doc;
}

std::string scan_report_csv(const AxiomScanReport& r) {
  std::ostringstream out;
  out << "rule,property,satisfied,satisfied_vacuous,violated,skipped\n";
  for (RuleId id : r.rules) {
    const RuleTally& t = r.tallies.at(id);
    out << rule_name(id) << ',' << axioms::property_name(r.property) << ',';
    if (t.universal && t.satisfied + t.satisfied_vacuous + t.violated + t.skipped == 0) {
      out << "general,general,general,general\n";
    } else {
      out << t.satisfied << ',' << t.satisfied_vacuous << ',' << t.violated << ',' << t.skipped
          << '\n';
    }
  }
  return out.str();
}

}  // namespace egalseq::harness
