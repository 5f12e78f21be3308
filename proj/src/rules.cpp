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

#include "egalseq/rules.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <span>

namespace egalseq::rules {

namespace {

void require_feasible(const Election& e) {
  if (!e.has_levels()) throw InfeasibleError("election has no levels");
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t m) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < m - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("too many");
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::optional<std::uint64_t> SumWinners::size() const {
  std::uint64_t total = 1;
  try {
    for (const auto& lv : levels_) {
      total = checked_mul(total, choose(lv.boundary.size(), lv.seats_from_boundary));
    }
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  return total;
}

bool SumWinners::contains(const CommitteeSequence& x) const {
  if (x.committees.size() != levels_.size()) return false;
  for (std::size_t t = 0; t < levels_.size(); ++t) {
    const auto& lv = levels_[t];
    const auto& xt = x.committees[t];
    if (xt.size() != lv.forced.size() + lv.seats_from_boundary) return false;
    std::size_t forced_seen = 0;
    for (auto c : xt) {
      if (std::binary_search(lv.forced.begin(), lv.forced.end(), c)) {
        ++forced_seen;
      } else if (!std::binary_search(lv.boundary.begin(), lv.boundary.end(), c)) {
        return false;
      }
    }
    if (forced_seen != lv.forced.size()) return false;
  }
  return true;
}

CommitteeSequence SumWinners::single() const {
  CommitteeSequence x;
  for (const auto& lv : levels_) {
    std::vector<std::size_t> xt = lv.forced;
    xt.insert(xt.end(), lv.boundary.begin(),
              lv.boundary.begin() + static_cast<std::ptrdiff_t>(lv.seats_from_boundary));
    std::sort(xt.begin(), xt.end());
    x.committees.push_back(std::move(xt));
  }
  return x;
}

std::vector<std::vector<std::size_t>> SumWinners::level_committees(std::size_t t,
                                                                   std::size_t cap) const {
  // Adding the same forced set to every choice keeps the lexicographic order
  // of the boundary choices.
  const auto& lv = levels_.at(t);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick(lv.seats_from_boundary);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  do {
    std::vector<std::size_t> xt = lv.forced;
    for (auto i : pick) xt.push_back(lv.boundary[i]);
    std::sort(xt.begin(), xt.end());
    out.push_back(std::move(xt));
  } while (out.size() < cap && next_combination(pick, lv.boundary.size()));
  return out;
}

WinnerSet SumWinners::enumerate(std::size_t cap) const {
  WinnerSet out;
  const auto total = size();
  out.complete = total && *total <= cap;
  std::vector<std::vector<std::vector<std::size_t>>> lists;
  for (std::size_t t = 0; t < levels_.size(); ++t) lists.push_back(level_committees(t, cap));
  std::vector<std::size_t> pick(levels_.size(), 0);
  while (out.winners.size() < cap) {
    CommitteeSequence x;
    for (std::size_t t = 0; t < lists.size(); ++t) x.committees.push_back(lists[t][pick[t]]);
    out.winners.push_back(std::move(x));
    std::size_t t = lists.size();
    while (t-- > 0) {
      if (++pick[t] < lists[t].size()) break;
      pick[t] = 0;
    }
    if (t == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

SumWinners rule_sum(const Election& e) {
  require_feasible(e);
  std::vector<SumWinners::LevelChoice> levels;
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    SumWinners::LevelChoice lv;
    const std::size_t k = e.k(t);
    if (k > 0) {
      std::vector<Score> cols(e.num_candidates(t));
      for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = e.column_sum(t, c);
      std::vector<Score> sorted = cols;
      std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                       sorted.end(), std::greater<>());
      const Score threshold = sorted[k - 1];
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c] > threshold) lv.forced.push_back(c);
        if (cols[c] == threshold) lv.boundary.push_back(c);
      }
      lv.seats_from_boundary = k - lv.forced.size();
    }
    levels.push_back(std::move(lv));
  }
  return SumWinners(std::move(levels));
}

namespace {

// Change of the satisfaction histogram caused by one insertion, as sparse
// (score, delta) pairs in ascending score order.
using HistogramDelta = std::vector<std::pair<Score, std::int64_t>>;

// Lexicographic comparison of H + d1 against H + d2; `less` is better.
std::strong_ordering compare_deltas(const HistogramDelta& d1, const HistogramDelta& d2) {
  std::size_t i = 0, j = 0;
  while (i < d1.size() || j < d2.size()) {
    Score s;
    std::int64_t v1 = 0, v2 = 0;
    if (j == d2.size() || (i < d1.size() && d1[i].first < d2[j].first)) {
      s = d1[i].first;
    } else {
      s = d2[j].first;
    }
    if (i < d1.size() && d1[i].first == s) v1 = d1[i++].second;
    if (j < d2.size() && d2[j].first == s) v2 = d2[j++].second;
    if (v1 != v2) return v1 <=> v2;
  }
  return std::strong_ordering::equal;
}

class GreedyEngine {
 public:
  explicit GreedyEngine(const Election& e)
      : e_(e), positive_(e.num_levels()), target_(e.num_levels()) {
    require_feasible(e);
    for (std::size_t t = 0; t < e.num_levels(); ++t) {
      for (std::size_t c = 0; c < e.num_candidates(t); ++c) {
        if (e.column_sum(t, c) > 0) positive_[t].push_back(c);
      }
      target_[t] = std::min(e.k(t), positive_[t].size());
    }
  }

  CommitteeSequence root() const {
    CommitteeSequence x = empty_sequence(e_);
    for (std::size_t t = 0; t < e_.num_levels(); ++t) {
      if (positive_[t].size() == target_[t]) x.committees[t] = positive_[t];
    }
    return x;
  }

  // The histogram-minimizing insertions at state x, in level-then-candidate
  // order. With all_ties false only the first minimizer is returned.
  std::vector<std::pair<std::size_t, std::size_t>> best_moves(
      const CommitteeSequence& x, std::span<const Score> scores, bool all_ties,
      GreedyCounters& counters) {
    std::vector<std::pair<std::size_t, std::size_t>> moves;
    bool have_best = false;
    for (std::size_t t = 0; t < e_.num_levels(); ++t) {
      if (x.committees[t].size() >= target_[t]) continue;
      const auto& xt = x.committees[t];
      for (auto c : positive_[t]) {
        if (std::binary_search(xt.begin(), xt.end(), c)) continue;
        build_delta(t, c, scores, counters, candidate_);
        ++counters.insertion_evaluations;
        const auto cmp = have_best ? compare_deltas(candidate_, best_)
                                   : std::strong_ordering::less;
        if (cmp < 0) {
          std::swap(best_, candidate_);
          have_best = true;
          moves.assign(1, {t, c});
        } else if (cmp == 0 && all_ties) {
          moves.emplace_back(t, c);
        }
      }
    }
    return moves;
  }

  void apply(CommitteeSequence& x, std::vector<Score>& scores, std::size_t t,
             std::size_t c) const {
    auto& xt = x.committees[t];
    xt.insert(std::upper_bound(xt.begin(), xt.end(), c), c);
    for (std::size_t a = 0; a < scores.size(); ++a) scores[a] += e_.utility(t, a, c);
  }

  void undo(CommitteeSequence& x, std::vector<Score>& scores, std::size_t t,
            std::size_t c) const {
    auto& xt = x.committees[t];
    xt.erase(std::lower_bound(xt.begin(), xt.end(), c));
    for (std::size_t a = 0; a < scores.size(); ++a) scores[a] -= e_.utility(t, a, c);
  }

  CommitteeSequence pad(CommitteeSequence x) const {
    for (std::size_t t = 0; t < e_.num_levels(); ++t) {
      auto& xt = x.committees[t];
      for (std::size_t c = 0; c < e_.num_candidates(t) && xt.size() < e_.k(t); ++c) {
        if (e_.column_sum(t, c) == 0) xt.insert(std::upper_bound(xt.begin(), xt.end(), c), c);
      }
    }
    return x;
  }

  std::vector<Score> scores_of(const CommitteeSequence& x) const { return agent_scores(e_, x); }

 private:
  void build_delta(std::size_t t, std::size_t c, std::span<const Score> scores,
                   GreedyCounters& counters, HistogramDelta& out) const {
    out.clear();
    for (std::size_t a = 0; a < scores.size(); ++a) {
      const Utility u = e_.utility(t, a, c);
      ++counters.score_updates;
      if (u == 0) continue;
      out.emplace_back(scores[a], -1);
      out.emplace_back(scores[a] + u, +1);
    }
    std::sort(out.begin(), out.end());
    std::size_t w = 0;
    for (std::size_t r = 0; r < out.size(); ++r) {
      if (w > 0 && out[w - 1].first == out[r].first) {
        out[w - 1].second += out[r].second;
      } else {
        out[w++] = out[r];
      }
    }
    out.resize(w);
    std::erase_if(out, [](const auto& p) { return p.second == 0; });
  }

  const Election& e_;
  std::vector<std::vector<std::size_t>> positive_;
  std::vector<std::size_t> target_;
  HistogramDelta best_, candidate_;
};

class GreedyTree {
 public:
  GreedyTree(const Election& e, const solver::SolveConfig& config)
      : engine_(e), cap_(config.winner_cap),
        deadline_(std::chrono::steady_clock::now() + config.time_budget) {}

  GreedyAllResult run() {
    CommitteeSequence x = engine_.root();
    std::vector<Score> scores = engine_.scores_of(x);
    GreedyAllResult out;
    try {
      explore(x, scores);
    } catch (const Stop&) {
    }
    out.timed_out = timed_out_;
    out.states_visited = visited_.size();
    out.winners.winners.assign(leaves_.begin(), leaves_.end());
    out.winners.complete = !timed_out_ && leaves_.size() <= cap_;
    if (out.winners.winners.size() > cap_) out.winners.winners.resize(cap_);
    return out;
  }

 private:
  struct Stop {};

  void explore(CommitteeSequence& x, std::vector<Score>& scores) {
    if (std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
      throw Stop{};
    }
    const auto moves = engine_.best_moves(x, scores, true, counters_);
    if (moves.empty()) {
      leaves_.insert(engine_.pad(x));
      if (leaves_.size() > cap_) throw Stop{};
      return;
    }
    for (auto [t, c] : moves) {
      engine_.apply(x, scores, t, c);
      if (visited_.insert(x).second) explore(x, scores);
      engine_.undo(x, scores, t, c);
    }
  }

  GreedyEngine engine_;
  std::size_t cap_;
  std::chrono::steady_clock::time_point deadline_;
  GreedyCounters counters_;
  std::set<CommitteeSequence> visited_;
  std::set<CommitteeSequence> leaves_;
  bool timed_out_ = false;
};

}  // namespace

GreedyResult rule_greedy_detailed(const Election& e) {
  GreedyEngine engine(e);
  GreedyResult out;
  CommitteeSequence x = engine.root();
  std::vector<Score> scores = engine.scores_of(x);
  while (true) {
    const auto moves = engine.best_moves(x, scores, false, out.counters);
    if (moves.empty()) break;
    engine.apply(x, scores, moves.front().first, moves.front().second);
    ++out.counters.steps;
  }
  out.sequence = engine.pad(x);
  out.unpadded = std::move(x);
  return out;
}

CommitteeSequence rule_greedy(const Election& e) { return rule_greedy_detailed(e).sequence; }

GreedyAllResult rule_greedy_all(const Election& e, const solver::SolveConfig& config) {
  if (config.winner_cap == 0) throw std::invalid_argument("winner cap must be positive");
  return GreedyTree(e, config).run();
}

solver::SolveAllResult rule_exact(const Election& e, RuleId rule,
                                  const solver::SolveConfig& config) {
  const solver::Objective objective = solver::objective_for(rule);
  solver::SolveConfig c = config;
  if (!c.hint && e.has_levels()) c.hint = rule_greedy(e);
  return solver::solve_all(e, objective, c);
}

CommitteeSequence single_winner(const Election& e, RuleId rule,
                                const solver::SolveConfig& config) {
  switch (rule) {
    case RuleId::kSum:
      return rule_sum(e).single();
    case RuleId::kGreedy:
      return rule_greedy(e);
    default:
      break;
  }
  solver::SolveConfig c = config;
  if (!c.hint && e.has_levels()) c.hint = rule_greedy(e);
  auto r = solver::solve_one(e, solver::objective_for(rule), c);
  if (!r.optimal) throw BudgetExceeded(std::string(rule_name(rule)) + ": solver budget ran out");
  return r.sequence;
}

WinnerSet all_winners(const Election& e, RuleId rule, const solver::SolveConfig& config) {
  switch (rule) {
    case RuleId::kSum:
      return rule_sum(e).enumerate(config.winner_cap);
    case RuleId::kGreedy: {
      auto r = rule_greedy_all(e, config);
      if (r.timed_out) throw BudgetExceeded("greedy: tie exploration ran out of time");
      return r.winners;
    }
    default:
      break;
  }
  auto r = rule_exact(e, rule, config);
  if (!r.optimal) throw BudgetExceeded(std::string(rule_name(rule)) + ": solver budget ran out");
  return r.winners;
}

}  // namespace egalseq::rules
