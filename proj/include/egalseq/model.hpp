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

#ifndef EGALSEQ_MODEL_HPP_
#define EGALSEQ_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace egalseq {

// Utilities and every score derived from them. Elections are validated at
// construction so that the sum of all utilities fits; every agent, level and
// sum score is bounded by that total.
using Utility = std::uint64_t;
using Score = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

// Malformed input: bad ids, inconsistent shapes, unreadable files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No valid committee sequence exists (some k_t > |C_t|, or no levels).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A node, time or enumeration budget ran out before the answer was certain.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Score checked_add(Score a, Score b);
Score checked_mul(Score a, Score b);

struct Level {
  std::string name;
  std::vector<std::string> candidates;
  std::size_t k = 0;
  // Row-major, one row per agent, one column per candidate.
  std::vector<Utility> utility;
};

struct ElectionMeta {
  std::string source;
  std::string instance_class;
  std::string kappa_rule;
  std::vector<std::string> notes;

  bool operator==(const ElectionMeta&) const = default;
};

// A multilevel election (A, C, U, kappa). Immutable after construction.
//
// Construction rejects: no agents, duplicate agent or candidate ids, a level
// without candidates, k_t > |C_t|, a utility matrix of the wrong shape, and
// utility totals that would overflow Score. A zero-level election is allowed
// as the identity of concatenation; the rules reject it as infeasible.
class Election {
 public:
  Election(std::vector<std::string> agents, std::vector<Level> levels,
           ElectionMeta meta = {});

  std::size_t num_agents() const { return agents_.size(); }
  std::size_t num_levels() const { return levels_.size(); }
  std::size_t num_candidates(std::size_t t) const {
    return levels_[t].candidates.size();
  }
  std::size_t k(std::size_t t) const { return levels_[t].k; }

  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<Level>& levels() const { return levels_; }
  const Level& level(std::size_t t) const { return levels_.at(t); }
  const ElectionMeta& meta() const { return meta_; }

  Utility utility(std::size_t t, std::size_t agent, std::size_t cand) const {
    const Level& lv = levels_[t];
    return lv.utility[agent * lv.candidates.size() + cand];
  }
  // Utilities of one agent over level t's candidates.
  std::span<const Utility> row(std::size_t t, std::size_t agent) const {
    const Level& lv = levels_[t];
    return {lv.utility.data() + agent * lv.candidates.size(),
            lv.candidates.size()};
  }
  // u_t(A, c): total utility candidate c receives on level t.
  Score column_sum(std::size_t t, std::size_t cand) const {
    return column_sums_[t][cand];
  }

  std::size_t agent_index(const std::string& id) const;
  std::size_t candidate_index(std::size_t t, const std::string& id) const;

  // Z(E) = max_a sum_t u_t(a, C_t).
  Score max_possible_agent_score() const { return z_; }

  // Number of distinct candidate ids over all levels (m).
  std::size_t total_candidates() const;

  // Whether Eq.-2 validity is achievable: tau >= 1.
  bool has_levels() const { return !levels_.empty(); }

  Election with_meta(ElectionMeta meta) const;
  Election with_committee_sizes(std::vector<std::size_t> sizes) const;

  bool operator==(const Election& other) const;

 private:
  std::vector<std::string> agents_;
  std::vector<Level> levels_;
  ElectionMeta meta_;
  std::vector<std::vector<Score>> column_sums_;
  Score z_ = 0;
};

// One committee per level, stored as ascending candidate indices. Ordering is
// the canonical order: level 1 most significant, lexicographic within a level.
struct CommitteeSequence {
  std::vector<std::vector<std::size_t>> committees;

  std::size_t num_levels() const { return committees.size(); }
  auto operator<=>(const CommitteeSequence&) const = default;
  bool operator==(const CommitteeSequence&) const = default;
};

// Sequence with every committee empty.
CommitteeSequence empty_sequence(const Election& e);

// Builds a sequence from candidate ids, one id list per level.
CommitteeSequence sequence_from_ids(
    const Election& e, const std::vector<std::vector<std::string>>& ids);
std::vector<std::vector<std::string>> sequence_to_ids(
    const Election& e, const CommitteeSequence& x);

// Throws DataError unless x has one sorted, duplicate-free, in-range
// committee per level of e. Committee sizes are not checked.
void check_consistent(const Election& e, const CommitteeSequence& x);

// |X_t| = k_t for every level.
bool is_valid(const Election& e, const CommitteeSequence& x);

// Concatenation x1 o x2.
CommitteeSequence concat(const CommitteeSequence& a,
                         const CommitteeSequence& b);

// Agent scores: histogram over 0..Z(E) kept sparse, since Z can be as large as
// the utilities themselves.
class SatHistogram {
 public:
  SatHistogram() = default;
  // Builds from raw agent scores; z is Z(E) (scores must not exceed it).
  SatHistogram(std::span<const Score> agent_scores, Score z);

  // sat(E, X, i).
  std::size_t count(Score i) const;
  // Z(E) + 1.
  Score length() const { return z_ + 1; }
  Score z() const { return z_; }
  std::size_t num_agents() const { return num_agents_; }
  // (score, multiplicity) pairs with nonzero multiplicity, ascending score.
  const std::vector<std::pair<Score, std::size_t>>& entries() const {
    return entries_;
  }
  // Dense counts[0..Z]. Only for small Z.
  std::vector<std::size_t> dense() const;
  // Agent scores sorted ascending (the ord vector).
  std::vector<Score> sorted_scores() const;

  bool operator==(const SatHistogram&) const = default;

 private:
  std::vector<std::pair<Score, std::size_t>> entries_;
  Score z_ = 0;
  std::size_t num_agents_ = 0;
};

struct ScoreTriple {
  Score agent_min = 0;
  Score level_min = 0;
  Score total = 0;

  bool operator==(const ScoreTriple&) const = default;
};

struct ObjectiveWeights {
  Score theta = 1;
  Score sigma = 1;
};

enum class WeightOrder { kALS, kASL };

Score score_agent(const Election& e, const CommitteeSequence& x,
                  std::size_t agent);
Score score_agent(const Election& e, const CommitteeSequence& x,
                  const std::string& agent_id);
std::vector<Score> agent_scores(const Election& e, const CommitteeSequence& x);
Score score_agent_min(const Election& e, const CommitteeSequence& x);
Score score_level(const Election& e, const CommitteeSequence& x,
                  std::size_t t);
Score score_level_min(const Election& e, const CommitteeSequence& x);
Score score_sum(const Election& e, const CommitteeSequence& x);
ScoreTriple score_triple(const Election& e, const CommitteeSequence& x);
SatHistogram sat_histogram(const Election& e, const CommitteeSequence& x);

// Lexicographic comparison of histograms from index 0 upward. `less` means
// fewer agents at the lowest differing score, i.e. strictly better for the
// lex rule.
std::strong_ordering lex_compare(const SatHistogram& h1,
                                 const SatHistogram& h2);

// Leximin comparison of two score vectors (any order); `greater` means the
// first is leximin-better. lex_compare(h(s1), h(s2)) == leximin_compare(s2, s1).
std::strong_ordering leximin_compare(std::vector<Score> s1,
                                     std::vector<Score> s2);

// sum_i sat_i * (n+1)^(Z-i), exactly.
BigInt lex_score_exact(const Election& e, const CommitteeSequence& x);
BigInt lex_score_exact(const SatHistogram& h);

// Sum of the k_t largest column sums of level t: the best level score.
Score best_level_score(const Election& e, std::size_t t);
ObjectiveWeights compute_weights(const Election& e);
// (agent_min, level_min, total) . (theta*sigma, sigma, 1) for ALS,
// (theta*sigma, 1, theta) for ASL.
BigInt weighted_objective(const Election& e, const CommitteeSequence& x,
                          WeightOrder order);
BigInt weighted_objective(const ScoreTriple& v, const ObjectiveWeights& w,
                          WeightOrder order);

}  // namespace egalseq

#endif  // EGALSEQ_MODEL_HPP_
