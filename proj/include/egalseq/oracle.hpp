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

// Brute-force reference semantics for every rule, plus instance generators.
// Nothing here shares code with the solver or the greedy implementation; it
// only uses the score functions of the model.

#ifndef EGALSEQ_ORACLE_HPP_
#define EGALSEQ_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "egalseq/model.hpp"
#include "egalseq/rule_id.hpp"

namespace egalseq::oracle {

struct EnumerationBudget {
  enum class OnExceed { kError, kTruncate };

  std::uint64_t max_sequences = 1'000'000;
  OnExceed on_exceed = OnExceed::kError;
};

// C(n, k); throws std::overflow_error past 2^64.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// prod_t C(|C_t|, k_t); std::nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> count_valid(const Election& e);

// Streams valid sequences in canonical order without materializing them.
class ValidSequenceStream {
 public:
  ValidSequenceStream(const Election& e, EnumerationBudget budget = {});

  // Writes the next sequence into out; false when exhausted or truncated.
  // Throws BudgetExceeded when the budget runs out under OnExceed::kError.
  bool next(CommitteeSequence& out);

  bool truncated() const { return truncated_; }
  std::uint64_t produced() const { return produced_; }

 private:
  const Election& e_;
  EnumerationBudget budget_;
  CommitteeSequence current_;
  bool started_ = false;
  bool done_ = false;
  bool truncated_ = false;
  std::uint64_t produced_ = 0;
};

std::vector<CommitteeSequence> enumerate_valid(const Election& e,
                                               EnumerationBudget budget = {});

// Valid sequence number `index` in canonical order.
CommitteeSequence unrank_valid(const Election& e, std::uint64_t index);
// Advances x to the next valid sequence in canonical order; false at the end.
bool next_valid(const Election& e, CommitteeSequence& x);

// Full winner set by scanning R_vld. GREEDY explores every tie-breaking path
// of the greedy procedure, recomputing histograms from scratch at each step.
WinnerSet brute_rule(const Election& e, RuleId rule,
                     EnumerationBudget budget = {});

// Same answers as brute_rule for EGAL/ALS/ASL/LEX, scanning the sequence
// index space with OpenMP threads. Other rules fall back to brute_rule.
WinnerSet brute_rule_parallel(const Election& e, RuleId rule,
                              EnumerationBudget budget = {});

// R_A filtered by level score then sum score (ALS), or sum then level (ASL).
WinnerSet brute_two_stage(const Election& e, WeightOrder order,
                          EnumerationBudget budget = {});

// Per level, every k_t-subset with the largest utility sum.
std::vector<std::vector<std::vector<std::size_t>>> brute_best_level_committees(
    const Election& e);

// Every agent at least as well off under x and one strictly better.
bool dominates(const Election& e, const CommitteeSequence& x,
               const CommitteeSequence& y);

// Largest scr_A^min over R_vld.
Score brute_max_min_agent(const Election& e, EnumerationBudget budget = {});

// Two agents, one level per number, u_t(a1,c1) = u_t(a2,c2) = x_t.
// The answer is yes iff the R_A optimum is at least sum/2.
Election gen_partition_instance(std::span<const Utility> multiset);

// k agents and candidates, one level per item; u_s(a_i, c_j) = M - x_s on
// the diagonal and M elsewhere, M = 1 + sum x. Feasible with capacity B iff
// the R_A optimum is at least N*M - B.
Election gen_binpacking_instance(std::span<const Utility> items,
                                 std::size_t bins);
Score binpacking_threshold(std::span<const Utility> items, Score capacity);

// One agent per edge, one level whose candidates are the vertices, unit
// utility for endpoints, committee size k. A cover of size <= k exists iff
// the R_A optimum is at least 1.
Election gen_vertexcover_instance(
    std::size_t num_vertices,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges,
    std::size_t k);

struct RandomElectionSpec {
  std::size_t agents = 4;
  std::size_t levels = 3;
  std::size_t min_candidates = 1;
  std::size_t max_candidates = 3;
  Utility max_utility = 3;
  std::size_t min_k = 1;
  std::size_t max_k = 1;
};

// Uniform utilities in [0, max_utility]; per-level candidate counts and
// committee sizes uniform in their ranges (k clamped to |C_t|).
Election gen_random(const RandomElectionSpec& spec, std::mt19937_64& rng);

// The four-friends example: breakfast, lunch, dinner with two options each.
Election example1();

}  // namespace egalseq::oracle

#endif  // EGALSEQ_ORACLE_HPP_
