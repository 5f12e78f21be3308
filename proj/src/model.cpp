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

#include "egalseq/model.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <unordered_set>

namespace egalseq {

Score checked_add(Score a, Score b) {
  Score r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("score overflow");
  }
  return r;
}

Score checked_mul(Score a, Score b) {
  Score r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("score overflow");
  }
  return r;
}

Election::Election(std::vector<std::string> agents, std::vector<Level> levels,
                   ElectionMeta meta)
    : agents_(std::move(agents)),
      levels_(std::move(levels)),
      meta_(std::move(meta)) {
  if (agents_.empty()) throw DataError("election has no agents");
  {
    std::unordered_set<std::string> seen;
    for (const auto& a : agents_) {
      if (!seen.insert(a).second) throw DataError("duplicate agent id: " + a);
    }
  }
  const std::size_t n = agents_.size();
  Score grand_total = 0;
  std::vector<Score> per_agent(n, 0);
  column_sums_.reserve(levels_.size());
  for (std::size_t t = 0; t < levels_.size(); ++t) {
    const Level& lv = levels_[t];
    const std::string where = "level " + std::to_string(t + 1);
    if (lv.candidates.empty()) throw DataError(where + " has no candidates");
    std::unordered_set<std::string> seen;
    for (const auto& c : lv.candidates) {
      if (!seen.insert(c).second) {
        throw DataError(where + ": duplicate candidate id: " + c);
      }
    }
    if (lv.k > lv.candidates.size()) {
      throw DataError(where + ": committee size " + std::to_string(lv.k) +
                      " exceeds " + std::to_string(lv.candidates.size()) +
                      " candidates");
    }
    const std::size_t m = lv.candidates.size();
    if (lv.utility.size() != n * m) {
      throw DataError(where + ": utility matrix must be " + std::to_string(n) +
                      " x " + std::to_string(m));
    }
    std::vector<Score> cols(m, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < m; ++c) {
        const Utility u = lv.utility[a * m + c];
        if (u > std::numeric_limits<Score>::max() - grand_total) {
          throw DataError("utility total does not fit in 64 bits");
        }
        grand_total += u;
        cols[c] += u;
        per_agent[a] += u;
      }
    }
    column_sums_.push_back(std::move(cols));
  }
  z_ = per_agent.empty() ? 0 : *std::max_element(per_agent.begin(), per_agent.end());
}

std::size_t Election::agent_index(const std::string& id) const {
  auto it = std::find(agents_.begin(), agents_.end(), id);
  if (it == agents_.end()) throw DataError("unknown agent id: " + id);
  return static_cast<std::size_t>(it - agents_.begin());
}

std::size_t Election::candidate_index(std::size_t t,
                                      const std::string& id) const {
  if (t >= levels_.size()) throw DataError("level index out of range");
  const auto& cs = levels_[t].candidates;
  auto it = std::find(cs.begin(), cs.end(), id);
  if (it == cs.end()) {
    throw DataError("candidate " + id + " is not on level " +
                    std::to_string(t + 1));
  }
  return static_cast<std::size_t>(it - cs.begin());
}

std::size_t Election::total_candidates() const {
  std::set<std::string> all;
  for (const auto& lv : levels_) all.insert(lv.candidates.begin(), lv.candidates.end());
  return all.size();
}

Election Election::with_meta(ElectionMeta meta) const {
  return Election(agents_, levels_, std::move(meta));
}

Election Election::with_committee_sizes(std::vector<std::size_t> sizes) const {
  if (sizes.size() != levels_.size()) {
    throw DataError("committee size vector length must equal the level count");
  }
  auto levels = levels_;
  for (std::size_t t = 0; t < levels.size(); ++t) levels[t].k = sizes[t];
  return Election(agents_, std::move(levels), meta_);
}

bool Election::operator==(const Election& other) const {
  if (agents_ != other.agents_ || meta_ != other.meta_ ||
      levels_.size() != other.levels_.size()) {
    return false;
  }
  for (std::size_t t = 0; t < levels_.size(); ++t) {
    const Level& a = levels_[t];
    const Level& b = other.levels_[t];
    if (a.name != b.name || a.candidates != b.candidates || a.k != b.k ||
        a.utility != b.utility) {
      return false;
    }
  }
  return true;
}

CommitteeSequence empty_sequence(const Election& e) {
  return CommitteeSequence{
      std::vector<std::vector<std::size_t>>(e.num_levels())};
}

CommitteeSequence sequence_from_ids(
    const Election& e, const std::vector<std::vector<std::string>>& ids) {
  if (ids.size() != e.num_levels()) {
    throw DataError("committee sequence length does not match level count");
  }
  CommitteeSequence x;
  x.committees.resize(ids.size());
  for (std::size_t t = 0; t < ids.size(); ++t) {
    for (const auto& id : ids[t]) {
      x.committees[t].push_back(e.candidate_index(t, id));
    }
    std::sort(x.committees[t].begin(), x.committees[t].end());
    if (std::adjacent_find(x.committees[t].begin(), x.committees[t].end()) !=
        x.committees[t].end()) {
      throw DataError("duplicate candidate in committee on level " +
                      std::to_string(t + 1));
    }
  }
  return x;
}

std::vector<std::vector<std::string>> sequence_to_ids(
    const Election& e, const CommitteeSequence& x) {
  std::vector<std::vector<std::string>> out(x.committees.size());
  for (std::size_t t = 0; t < x.committees.size(); ++t) {
    for (auto c : x.committees[t]) out[t].push_back(e.level(t).candidates.at(c));
  }
  return out;
}

void check_consistent(const Election& e, const CommitteeSequence& x) {
  if (x.committees.size() != e.num_levels()) {
    throw DataError("committee sequence has " +
                    std::to_string(x.committees.size()) + " levels, election " +
                    std::to_string(e.num_levels()));
  }
  for (std::size_t t = 0; t < x.committees.size(); ++t) {
    const auto& xt = x.committees[t];
    for (std::size_t i = 0; i < xt.size(); ++i) {
      if (xt[i] >= e.num_candidates(t)) {
        throw DataError("committee on level " + std::to_string(t + 1) +
                        " contains a candidate not on that level");
      }
      if (i > 0 && xt[i - 1] >= xt[i]) {
        throw DataError("committee on level " + std::to_string(t + 1) +
                        " is not strictly ascending");
      }
    }
  }
}

bool is_valid(const Election& e, const CommitteeSequence& x) {
  if (x.committees.size() != e.num_levels()) return false;
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    if (x.committees[t].size() != e.k(t)) return false;
  }
  return true;
}

CommitteeSequence concat(const CommitteeSequence& a,
                         const CommitteeSequence& b) {
  CommitteeSequence out = a;
  out.committees.insert(out.committees.end(), b.committees.begin(),
                        b.committees.end());
  return out;
}

SatHistogram::SatHistogram(std::span<const Score> agent_scores, Score z)
    : z_(z), num_agents_(agent_scores.size()) {
  std::vector<Score> s(agent_scores.begin(), agent_scores.end());
  std::sort(s.begin(), s.end());
  for (Score v : s) {
    if (v > z_) throw std::invalid_argument("agent score exceeds Z(E)");
    if (!entries_.empty() && entries_.back().first == v) {
      ++entries_.back().second;
    } else {
      entries_.emplace_back(v, 1);
    }
  }
}

std::size_t SatHistogram::count(Score i) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), i,
      [](const std::pair<Score, std::size_t>& p, Score v) { return p.first < v; });
  return (it != entries_.end() && it->first == i) ? it->second : 0;
}

std::vector<std::size_t> SatHistogram::dense() const {
  if (z_ >= (Score{1} << 26)) throw std::length_error("histogram too long to densify");
  std::vector<std::size_t> out(static_cast<std::size_t>(z_) + 1, 0);
  for (const auto& [v, c] : entries_) out[v] = c;
  return out;
}

std::vector<Score> SatHistogram::sorted_scores() const {
  std::vector<Score> out;
  out.reserve(num_agents_);
  for (const auto& [v, c] : entries_) out.insert(out.end(), c, v);
  return out;
}

namespace {

void require_agent(const Election& e, std::size_t agent) {
  if (agent >= e.num_agents()) throw DataError("unknown agent index");
}

}  // namespace

Score score_agent(const Election& e, const CommitteeSequence& x,
                  std::size_t agent) {
  check_consistent(e, x);
  require_agent(e, agent);
  Score s = 0;
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    auto row = e.row(t, agent);
    for (auto c : x.committees[t]) s += row[c];
  }
  return s;
}

Score score_agent(const Election& e, const CommitteeSequence& x,
                  const std::string& agent_id) {
  return score_agent(e, x, e.agent_index(agent_id));
}

std::vector<Score> agent_scores(const Election& e, const CommitteeSequence& x) {
  check_consistent(e, x);
  std::vector<Score> out(e.num_agents(), 0);
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    for (std::size_t a = 0; a < e.num_agents(); ++a) {
      auto row = e.row(t, a);
      for (auto c : x.committees[t]) out[a] += row[c];
    }
  }
  return out;
}

Score score_agent_min(const Election& e, const CommitteeSequence& x) {
  auto s = agent_scores(e, x);
  return *std::min_element(s.begin(), s.end());
}

Score score_level(const Election& e, const CommitteeSequence& x,
                  std::size_t t) {
  check_consistent(e, x);
  if (t >= e.num_levels()) throw DataError("level index out of range");
  Score s = 0;
  for (auto c : x.committees[t]) s += e.column_sum(t, c);
  return s;
}

Score score_level_min(const Election& e, const CommitteeSequence& x) {
  check_consistent(e, x);
  if (e.num_levels() == 0) return 0;
  Score best = std::numeric_limits<Score>::max();
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    best = std::min(best, score_level(e, x, t));
  }
  return best;
}

Score score_sum(const Election& e, const CommitteeSequence& x) {
  Score s = 0;
  for (Score v : agent_scores(e, x)) s += v;
  return s;
}

ScoreTriple score_triple(const Election& e, const CommitteeSequence& x) {
  auto s = agent_scores(e, x);
  ScoreTriple v;
  v.agent_min = *std::min_element(s.begin(), s.end());
  for (Score a : s) v.total += a;
  v.level_min = score_level_min(e, x);
  return v;
}

SatHistogram sat_histogram(const Election& e, const CommitteeSequence& x) {
  auto s = agent_scores(e, x);
  return SatHistogram(s, e.max_possible_agent_score());
}

std::strong_ordering lex_compare(const SatHistogram& h1,
                                 const SatHistogram& h2) {
  // Walk both sparse histograms in score order; a missing entry is a zero.
  const auto& a = h1.entries();
  const auto& b = h2.entries();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      return std::strong_ordering::greater;  // h1 has agents where h2 has none
    }
    if (i == a.size() || b[j].first < a[i].first) {
      return std::strong_ordering::less;
    }
    if (a[i].second != b[j].second) return a[i].second <=> b[j].second;
    ++i;
    ++j;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering leximin_compare(std::vector<Score> s1,
                                     std::vector<Score> s2) {
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  return s1 <=> s2;
}

BigInt lex_score_exact(const SatHistogram& h) {
  const BigInt base = BigInt(h.num_agents()) + 1;
  BigInt total = 0;
  for (const auto& [v, c] : h.entries()) {
    const Score exponent = h.z() - v;
    if (exponent > std::numeric_limits<unsigned>::max()) {
      throw std::overflow_error("lex score exponent too large");
    }
    total += BigInt(c) * boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
  }
  return total;
}

BigInt lex_score_exact(const Election& e, const CommitteeSequence& x) {
  return lex_score_exact(sat_histogram(e, x));
}

Score best_level_score(const Election& e, std::size_t t) {
  std::vector<Score> cols(e.num_candidates(t));
  for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = e.column_sum(t, c);
  const std::size_t k = e.k(t);
  std::partial_sort(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(k),
                    cols.end(), std::greater<>());
  Score s = 0;
  for (std::size_t i = 0; i < k; ++i) s += cols[i];
  return s;
}

ObjectiveWeights compute_weights(const Election& e) {
  Score max_level = 0;
  Score max_sum = 0;
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    const Score best = best_level_score(e, t);
    max_level = std::max(max_level, best);
    max_sum += best;
  }
  return ObjectiveWeights{checked_add(max_level, 1), checked_add(max_sum, 1)};
}

BigInt weighted_objective(const ScoreTriple& v, const ObjectiveWeights& w,
                          WeightOrder order) {
  const BigInt theta = w.theta;
  const BigInt sigma = w.sigma;
  const BigInt top = BigInt(v.agent_min) * theta * sigma;
  if (order == WeightOrder::kALS) {
    return top + BigInt(v.level_min) * sigma + BigInt(v.total);
  }
  return top + BigInt(v.level_min) + BigInt(v.total) * theta;
}

BigInt weighted_objective(const Election& e, const CommitteeSequence& x,
                          WeightOrder order) {
  return weighted_objective(score_triple(e, x), compute_weights(e), order);
}

}  // namespace egalseq
