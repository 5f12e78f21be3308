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

#ifndef EGALSEQ_RULES_HPP_
#define EGALSEQ_RULES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "egalseq/model.hpp"
#include "egalseq/rule_id.hpp"
#include "egalseq/solver.hpp"

namespace egalseq::rules {

// The sum rule's winners as a product of per-level committee sets. Each level
// keeps every candidate whose column sum beats the k_t-th largest, and picks
// the remaining seats from the candidates tied at that value.
class SumWinners {
 public:
  struct LevelChoice {
    std::vector<std::size_t> forced;    // sum strictly above the threshold
    std::vector<std::size_t> boundary;  // sum equal to the threshold
    std::size_t seats_from_boundary = 0;
  };

  explicit SumWinners(std::vector<LevelChoice> levels) : levels_(std::move(levels)) {}

  const std::vector<LevelChoice>& levels() const { return levels_; }
  // Number of winners; std::nullopt past 2^64.
  std::optional<std::uint64_t> size() const;
  bool contains(const CommitteeSequence& x) const;
  // Per level the k_t top-sum candidates, ties to the lower index.
  CommitteeSequence single() const;
  // The first `cap` winners in canonical order; complete iff there are no
  // more than `cap`.
  WinnerSet enumerate(std::size_t cap) const;
  // Committees of one level in canonical order, at most `cap` of them.
  std::vector<std::vector<std::size_t>> level_committees(std::size_t t,
                                                         std::size_t cap) const;

 private:
  std::vector<LevelChoice> levels_;
};

SumWinners rule_sum(const Election& e);

// Operation counts of one greedy run, for checking polynomial scaling.
struct GreedyCounters {
  std::uint64_t steps = 0;                  // candidates added in the main loop
  std::uint64_t insertion_evaluations = 0;  // (level, candidate) pairs scored
  std::uint64_t score_updates = 0;          // per-agent score changes examined
};

struct GreedyResult {
  CommitteeSequence sequence;  // padded back to the original k_t
  CommitteeSequence unpadded;  // committees of size min(k_t, |C_t^+|)
  GreedyCounters counters;
};

// Greedy histogram descent: candidates with positive support only, each step
// adds the (level, candidate) pair whose resulting satisfaction histogram is
// lexicographically smallest; ties go to the lower level, then the lower
// candidate index. Levels with exactly min(k_t, |C_t^+|) supported candidates
// are filled up front. Short committees are padded with the lowest-index
// zero-support candidates.
GreedyResult rule_greedy_detailed(const Election& e);
CommitteeSequence rule_greedy(const Election& e);

struct GreedyAllResult {
  WinnerSet winners;
  bool timed_out = false;
  std::uint64_t states_visited = 0;
};

// Every sequence the greedy procedure reaches under some tie-breaking.
// Depth-first over all histogram-minimizing choices; incomplete states that
// were already expanded are skipped. Stops once more than winner_cap distinct
// results are known, or at the time budget.
GreedyAllResult rule_greedy_all(const Election& e, const solver::SolveConfig& config = {});

// EGAL, ALS, ASL or LEX through the solver.
solver::SolveAllResult rule_exact(const Election& e, RuleId rule,
                                  const solver::SolveConfig& config = {});

// Single winner of any rule: the canonical choice for SUM and GREEDY, the
// first optimum in canonical order for the others. Throws BudgetExceeded if
// the solver could not prove optimality.
CommitteeSequence single_winner(const Election& e, RuleId rule,
                                const solver::SolveConfig& config = {});

// Winner set of any rule, at most config.winner_cap sequences. Budget
// exhaustion surfaces as BudgetExceeded.
WinnerSet all_winners(const Election& e, RuleId rule,
                      const solver::SolveConfig& config = {});

}  // namespace egalseq::rules

#endif  // EGALSEQ_RULES_HPP_
