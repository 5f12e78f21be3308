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

// Exact optimization over valid committee sequences.
//
// The native backend is a depth-first branch and bound: levels in order,
// candidates in ascending index within a level, so leaves are visited in
// canonical order. A node is pruned when an optimistic completion bound
// cannot beat the incumbent.

#ifndef EGALSEQ_SOLVER_HPP_
#define EGALSEQ_SOLVER_HPP_

#include <chrono>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "egalseq/model.hpp"
#include "egalseq/rule_id.hpp"

namespace egalseq::solver {

enum class ObjectiveKind { kMaxMinAgent, kWeighted, kLexHistogram };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::kMaxMinAgent;
  WeightOrder order = WeightOrder::kALS;  // only for kWeighted

  static Objective max_min_agent() { return {ObjectiveKind::kMaxMinAgent, WeightOrder::kALS}; }
  static Objective weighted(WeightOrder o) { return {ObjectiveKind::kWeighted, o}; }
  static Objective lex() { return {ObjectiveKind::kLexHistogram, WeightOrder::kALS}; }
};

// EGAL, ALS, ASL or LEX; throws std::invalid_argument for SUM and GREEDY.
Objective objective_for(RuleId rule);

// How internal lex nodes are pruned. kMinAgent compares only the smallest
// optimistic agent score with the incumbent's smallest score. kSortedBounds
// compares the whole sorted vector of optimistic agent scores leximin-wise
// with the incumbent; it is admissible because completions are bounded
// componentwise, and it prunes far more on tie-heavy instances.
enum class LexPruning { kMinAgent, kSortedBounds };

enum class LexBackend {
  kBranchAndBound,  // one search over the full histogram
  kStaged,          // windows of lex_window scores, earlier windows frozen
  kPointRounds,     // next minimum score, then its multiplicity, repeat
};

struct SolveConfig {
  std::size_t winner_cap = 30;
  std::chrono::milliseconds time_budget{10'000};
  std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
  LexPruning lex_pruning = LexPruning::kSortedBounds;
  LexBackend lex_backend = LexBackend::kBranchAndBound;
  // Window width for kStaged; 0 selects default_lex_window(n).
  std::size_t lex_window = 0;
  // A valid sequence used as the starting incumbent. It only speeds up the
  // search; results do not depend on it.
  std::optional<CommitteeSequence> hint;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t pruned = 0;
  std::uint64_t searches = 0;
};

struct SolveResult {
  CommitteeSequence sequence;
  // False when a budget ran out; `sequence` is then the best incumbent.
  bool optimal = true;
  SolveStats stats;
};

struct SolveAllResult {
  // At most winner_cap winners. winners.complete is false when more than
  // winner_cap exist or a budget ran out; `optimal` is false only in the
  // second case.
  WinnerSet winners;
  bool optimal = true;
  SolveStats stats;
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string_view name() const = 0;
  virtual SolveResult solve_one(const Election& e, const Objective& objective,
                                const SolveConfig& config) const = 0;
  virtual SolveAllResult solve_all(const Election& e, const Objective& objective,
                                   const SolveConfig& config) const = 0;
};

class BranchAndBoundBackend final : public SolverBackend {
 public:
  std::string_view name() const override { return "branch-and-bound"; }
  SolveResult solve_one(const Election& e, const Objective& objective,
                        const SolveConfig& config) const override;
  SolveAllResult solve_all(const Election& e, const Objective& objective,
                           const SolveConfig& config) const override;
};

// Lex objective solved window by window: stage s maximizes the scores clipped
// at (s+1)*width with the histogram below s*width frozen to the previous
// stage's counts. Other objectives go to branch and bound.
class StagedLexBackend final : public SolverBackend {
 public:
  std::string_view name() const override { return "staged-lex"; }
  SolveResult solve_one(const Election& e, const Objective& objective,
                        const SolveConfig& config) const override;
  SolveAllResult solve_all(const Election& e, const Objective& objective,
                           const SolveConfig& config) const override;
};

// Lex objective solved in rounds: maximize the smallest score not yet
// frozen, then minimize how many agents get it, freeze (score, count), and
// repeat until every agent is accounted for.
class PointRoundsLexBackend final : public SolverBackend {
 public:
  std::string_view name() const override { return "point-rounds-lex"; }
  SolveResult solve_one(const Election& e, const Objective& objective,
                        const SolveConfig& config) const override;
  SolveAllResult solve_all(const Election& e, const Objective& objective,
                           const SolveConfig& config) const override;
};

// Backend selected by config.lex_backend.
const SolverBackend& backend_for(const SolveConfig& config);

// Throws InfeasibleError when R_vld is empty.
SolveResult solve_one(const Election& e, const Objective& objective,
                      const SolveConfig& config = {});
// One search that keeps every leaf tied with the incumbent; equivalent to
// repeated solves with exclusion constraints (see solve_all_by_exclusion).
SolveAllResult solve_all(const Election& e, const Objective& objective,
                         const SolveConfig& config = {});

// Repeated solve_one calls, each excluding every winner found so far, until
// the next optimum is strictly worse or nothing is left. One solve past
// winner_cap decides whether the capped set is complete.
SolveAllResult solve_all_by_exclusion(const Election& e, const Objective& objective,
                                      const SolveConfig& config = {});

// A valid sequence dominating x (every agent at least as well off, one
// strictly better), or std::nullopt. Searches for a total score above x's
// with x's agent scores as floors.
std::optional<CommitteeSequence> find_dominating(const Election& e, const CommitteeSequence& x,
                                                 const SolveConfig& config = {});

SolveResult staged_lex_solve(const Election& e, const SolveConfig& config = {});

// floor(log(1e17) / log(n + 1)) - 1, at least 1: the widest window whose
// (n+1)-ary encoding fits a 1e17 integer bound.
std::size_t default_lex_window(std::size_t num_agents);

// Objective comparison of two valid sequences: `greater` means a is better.
std::strong_ordering compare_objective(const Election& e, const Objective& objective,
                                       const CommitteeSequence& a,
                                       const CommitteeSequence& b);

// Optimistic completion bounds of a partial sequence as used by the search.
// `partial` holds full committees for levels before some level t, a partial
// committee at t, and empty committees after it; completions only add
// candidates at t with an index above the largest chosen one.
struct OptimisticBounds {
  std::vector<Score> agent;
  Score level_min = 0;
  Score total = 0;
};
OptimisticBounds optimistic_bounds(const Election& e, const CommitteeSequence& partial);

}  // namespace egalseq::solver

#endif  // EGALSEQ_SOLVER_HPP_
