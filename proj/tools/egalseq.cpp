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

// Command line front end.
//
//   egalseq solve FILE --rule lex
//   egalseq enumerate FILE --rule egal --winner-cap 100
//   egalseq score-table DIR --kappa 2 --out table
//   egalseq axiom-scan DIR --property P3 --out scan
//   egalseq ingest PROFILE LABELS --class point --kappa 2 --out e.json
//   egalseq gen random --agents 4 --levels 3 --cands 3 --umax 3 --seed 7
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 budget failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egalseq/axioms.hpp"
#include "egalseq/harness.hpp"
#include "egalseq/ingest.hpp"
#include "egalseq/io.hpp"
#include "egalseq/model.hpp"
#include "egalseq/oracle.hpp"
#include "egalseq/rules.hpp"
#include "egalseq/solver.hpp"

namespace {

using namespace egalseq;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBudget = 3;

struct Globals {
  std::size_t winner_cap = 30;
  double time_limit = 10.0;  // seconds
  std::uint64_t seed = 0;
  int jobs = 1;
  std::optional<std::size_t> kappa;
};

solver::SolveConfig solve_config(const Globals& g) {
  solver::SolveConfig cfg;
  cfg.winner_cap = g.winner_cap;
  cfg.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(g.time_limit * 1000));
  return cfg;
}

std::vector<RuleId> parse_rules(const std::vector<std::string>& names) {
  if (names.empty()) return {kStudiedRules.begin(), kStudiedRules.end()};
  std::vector<RuleId> out;
  for (const auto& n : names) out.push_back(parse_rule(n));
  return out;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

Election load(const std::string& path, const Globals& g) {
  Election e = io::read_election(path);
  if (g.kappa) e = ingest::kappa_rule(e, *g.kappa);
  return e;
}

std::string join_scores(const std::vector<Score>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

void print_sequence_report(const Election& e, const CommitteeSequence& x) {
  const ScoreTriple v = score_triple(e, x);
  const SatHistogram h = sat_histogram(e, x);
  std::cout << "winner: " << io::sequence_to_json(e, x).dump() << '\n'
            << "agent_min: " << v.agent_min << '\n'
            << "level_min: " << v.level_min << '\n'
            << "sum: " << v.total << '\n'
            << "ord: " << join_scores(h.sorted_scores()) << '\n'
            << "histogram:";
  for (const auto& [score, count] : h.entries()) std::cout << ' ' << score << ':' << count;
  std::cout << '\n';
}

solver::LexBackend parse_backend(const std::string& name) {
  if (name == "bnb") return solver::LexBackend::kBranchAndBound;
  if (name == "staged") return solver::LexBackend::kStaged;
  if (name == "rounds") return solver::LexBackend::kPointRounds;
  throw CLI::ValidationError("--lex-backend", "expected bnb, staged or rounds");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Egalitarian committee sequences: rules, experiments and axiom checks"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--winner-cap", g.winner_cap, "Largest winner set computed in full")
      ->check(CLI::PositiveNumber);
  app.add_option("--time-limit", g.time_limit, "Per-computation time limit in seconds")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized generators");
  app.add_option("--jobs", g.jobs, "Worker threads for corpus commands")->check(CLI::PositiveNumber);
  app.add_option("--kappa", g.kappa, "Set committee sizes to max(min(l, |C_t|-1), 1)")
      ->check(CLI::PositiveNumber);

  // solve
  auto* solve = app.add_subcommand("solve", "One winner of a rule with its scores");
  std::string solve_file, solve_rule = "lex", lex_backend = "bnb";
  solve->add_option("file", solve_file, "Election file")->required();
  solve->add_option("--rule", solve_rule, "sum, greedy, egal, als, asl or lex");
  solve->add_option("--lex-backend", lex_backend, "bnb, staged or rounds");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Winner set of a rule, up to the cap");
  std::string enum_file, enum_rule = "lex";
  enumerate->add_option("file", enum_file, "Election file")->required();
  enumerate->add_option("--rule", enum_rule, "sum, greedy, egal, als, asl or lex");

  // score-table
  auto* table = app.add_subcommand("score-table", "Optimal-score percentages over a corpus");
  std::string table_dir, table_out, plot_dir;
  std::vector<std::string> table_rules;
  table->add_option("corpus", table_dir, "Directory of election files")->required();
  table->add_option("--rules", table_rules, "Rules to tabulate")->delimiter(',');
  table->add_option("--out", table_out, "Write OUT.csv and OUT.json instead of printing");
  table->add_option("--emit-plot-data", plot_dir, "Directory for per-instance series files");

  // axiom-scan
  auto* scan = app.add_subcommand("axiom-scan", "Property checks over a corpus with discards");
  std::string scan_dir, scan_out, scan_property;
  std::vector<std::string> scan_rules;
  double greedy_limit = 10.0;
  bool check_universal = false;
  harness::DiscardPolicy policy;
  scan->add_option("corpus", scan_dir, "Directory of election files")->required();
  scan->add_option("--property", scan_property, "P1..P5 or a property name")->required();
  scan->add_option("--rules", scan_rules, "Rules to check")->delimiter(',');
  scan->add_option("--out", scan_out, "Write OUT.csv and OUT.json instead of printing");
  scan->add_option("--greedy-time-limit", greedy_limit,
                   "Seconds allowed for enumerating greedy winners")
      ->check(CLI::PositiveNumber);
  scan->add_option("--max-agents", policy.max_agents, "Size limit for P3 and P5");
  scan->add_option("--max-candidates", policy.max_candidates, "Size limit for P3 and P5");
  scan->add_flag("--check-universal", check_universal,
                 "Also check rules that satisfy the property in general");

  // ingest
  auto* ing = app.add_subcommand("ingest", "Ranked profile plus labels to an election");
  std::string profile_file, labels_file, class_name = "approval2", ingest_out;
  ing->add_option("profile", profile_file, "Strict-order preference file")->required();
  ing->add_option("labels", labels_file, "Label sidecar (JSON)")->required();
  ing->add_option("--class", class_name, "approval1, approval2 or point");
  ing->add_option("--out", ingest_out, "Output file (default stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate elections");
  std::string gen_kind, gen_out;
  oracle::RandomElectionSpec rspec;
  std::vector<Utility> numbers;
  std::size_t bins = 2, vertices = 0, cover_k = 1;
  std::vector<std::string> edges;
  gen->add_option("kind", gen_kind, "random, partition, binpacking, vertexcover or example1")
      ->required()
      ->check(CLI::IsMember({"random", "partition", "binpacking", "vertexcover", "example1"}));
  gen->add_option("--out", gen_out, "Output file (default stdout)");
  gen->add_option("--agents", rspec.agents, "random: number of agents");
  gen->add_option("--levels", rspec.levels, "random: number of levels");
  gen->add_option("--cands", rspec.max_candidates, "random: most candidates per level");
  gen->add_option("--min-cands", rspec.min_candidates, "random: fewest candidates per level");
  gen->add_option("--umax", rspec.max_utility, "random: largest utility");
  gen->add_option("--kmin", rspec.min_k, "random: smallest committee size");
  gen->add_option("--kmax", rspec.max_k, "random: largest committee size");
  gen->add_option("--set,--items", numbers, "partition/binpacking: the numbers")->delimiter(',');
  gen->add_option("--bins", bins, "binpacking: number of bins");
  gen->add_option("--vertices", vertices, "vertexcover: number of vertices");
  gen->add_option("--edges", edges, "vertexcover: edges as u-v")->delimiter(',');
  gen->add_option("--k", cover_k, "vertexcover: cover size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (rspec.max_candidates < rspec.min_candidates) rspec.min_candidates = rspec.max_candidates;
    if (rspec.max_k < rspec.min_k) rspec.min_k = rspec.max_k;

    if (*solve) {
      const Election e = load(solve_file, g);
      const RuleId rule = parse_rule(solve_rule);
      solver::SolveConfig cfg = solve_config(g);
      cfg.lex_backend = parse_backend(lex_backend);
      const auto start = std::chrono::steady_clock::now();
      const CommitteeSequence x = rules::single_winner(e, rule, cfg);
      const auto stop = std::chrono::steady_clock::now();
      std::cout << "rule: " << rule_name(rule) << '\n';
      print_sequence_report(e, x);
      std::cout << "seconds: " << std::chrono::duration<double>(stop - start).count() << '\n';
    } else if (*enumerate) {
      const Election e = load(enum_file, g);
      const RuleId rule = parse_rule(enum_rule);
      const WinnerSet w = rules::all_winners(e, rule, solve_config(g));
      std::cout << "rule: " << rule_name(rule) << '\n'
                << "winners: " << w.winners.size() << '\n'
                << "complete: " << (w.complete ? "yes" : "no") << '\n';
      for (const auto& x : w.winners) std::cout << io::sequence_to_json(e, x).dump() << '\n';
    } else if (*table) {
      const harness::Corpus corpus = harness::load_corpus(table_dir, g.kappa);
      for (const auto& [name, why] : corpus.failures) {
        std::cerr << "skipping " << name << ": " << why << '\n';
      }
      harness::RunConfig run{solve_config(g), g.jobs};
      const harness::ScoreTable t =
          harness::score_table(corpus.instances, parse_rules(table_rules), run);
      for (const auto& [name, why] : t.failures) std::cerr << "excluded " << name << ": " << why << '\n';
      if (table_out.empty()) {
        std::cout << harness::score_table_csv(t);
      } else {
        write_text(harness::score_table_csv(t), table_out + ".csv");
        write_text(harness::score_table_json(t, run).dump(2) + "\n", table_out + ".json");
      }
      if (!plot_dir.empty()) harness::write_plot_data(t, plot_dir);
    } else if (*scan) {
      const harness::Corpus corpus = harness::load_corpus(scan_dir, g.kappa);
      harness::ScanConfig cfg;
      cfg.run = {solve_config(g), g.jobs};
      cfg.policy = policy;
      cfg.policy.winner_cap = g.winner_cap;
      cfg.policy.greedy_all_time_limit =
          std::chrono::milliseconds(static_cast<std::int64_t>(greedy_limit * 1000));
      cfg.check_universal = check_universal;
      const auto property = axioms::parse_property(scan_property);
      auto report = harness::axiom_scan(corpus.instances, property, parse_rules(scan_rules), cfg);
      report.instances_total += corpus.failures.size();
      report.instances_other += corpus.failures.size();
      const auto doc = harness::scan_report_json(report, cfg);
      if (scan_out.empty()) {
        std::cout << doc["instances"].dump() << '\n' << doc["units"].dump() << '\n'
                  << harness::scan_report_csv(report);
      } else {
        write_text(harness::scan_report_csv(report), scan_out + ".csv");
        write_text(doc.dump(2) + "\n", scan_out + ".json");
      }
    } else if (*ing) {
      const auto cls = ingest::parse_class(class_name);
      const auto result = ingest::ingest_files(profile_file, labels_file, cls, g.kappa.value_or(2));
      if (const auto* rej = std::get_if<ingest::Rejection>(&result)) {
        std::cout << "rejected: " << rej->reason << '\n';
      } else {
        write_text(io::dump_election(std::get<Election>(result)), ingest_out);
      }
    } else if (*gen) {
      std::optional<Election> e;
      if (gen_kind == "random") {
        std::mt19937_64 rng(g.seed);
        e = oracle::gen_random(rspec, rng);
      } else if (gen_kind == "partition") {
        e = oracle::gen_partition_instance(numbers);
      } else if (gen_kind == "binpacking") {
        e = oracle::gen_binpacking_instance(numbers, bins);
      } else if (gen_kind == "vertexcover") {
        std::vector<std::pair<std::size_t, std::size_t>> es;
        for (const auto& s : edges) {
          std::size_t u = 0, v = 0;
          char dash = 0;
          std::istringstream in(s);
          if (!(in >> u >> dash >> v) || dash != '-') throw DataError("bad edge '" + s + "'");
          es.emplace_back(u, v);
        }
        e = oracle::gen_vertexcover_instance(vertices, es, cover_k);
      } else {
        e = oracle::example1();
      }
      if (g.kappa) e = ingest::kappa_rule(*e, *g.kappa);
      write_text(io::dump_election(*e), gen_out);
    }
  } catch (const BudgetExceeded& err) {
    std::cerr << "budget exceeded: " << err.what() << '\n';
    return kExitBudget;
  } catch (const CLI::ValidationError& err) {
    std::cerr << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
