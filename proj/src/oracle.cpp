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

#include "egalseq/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "oracle_scan.hpp"

namespace egalseq::oracle {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("binomial coefficient overflow");
    }
  }
  return static_cast<std::uint64_t>(r);
}

std::optional<std::uint64_t> count_valid(const Election& e) {
  std::uint64_t total = 1;
  try {
    for (std::size_t t = 0; t < e.num_levels(); ++t) {
      total = checked_mul(total, binomial(e.num_candidates(t), e.k(t)));
    }
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  return total;
}

namespace {

// Next k-subset of {0..m-1} in lexicographic order.
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

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> comb(k);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  return comb;
}

// Lexicographic unranking of a k-subset of {0..m-1}.
std::vector<std::size_t> unrank_combination(std::size_t m, std::size_t k,
                                            std::uint64_t rank) {
  std::vector<std::size_t> comb;
  comb.reserve(k);
  std::size_t c = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    while (true) {
      const std::uint64_t with_c = binomial(m - c - 1, k - slot - 1);
      if (rank < with_c) break;
      rank -= with_c;
      ++c;
    }
    comb.push_back(c);
    ++c;
  }
  return comb;
}

}  // namespace

bool next_valid(const Election& e, CommitteeSequence& x) {
  for (std::size_t t = e.num_levels(); t-- > 0;) {
    if (next_combination(x.committees[t], e.num_candidates(t))) return true;
    x.committees[t] = first_combination(e.k(t));
  }
  return false;
}

CommitteeSequence unrank_valid(const Election& e, std::uint64_t index) {
  CommitteeSequence x;
  x.committees.resize(e.num_levels());
  for (std::size_t t = e.num_levels(); t-- > 0;) {
    const std::uint64_t radix = binomial(e.num_candidates(t), e.k(t));
    x.committees[t] = unrank_combination(e.num_candidates(t), e.k(t), index % radix);
    index /= radix;
  }
  if (index != 0) throw std::out_of_range("sequence index out of range");
  return x;
}

ValidSequenceStream::ValidSequenceStream(const Election& e,
                                         EnumerationBudget budget)
    : e_(e), budget_(budget) {
  if (budget_.max_sequences < 1) {
    throw std::invalid_argument("enumeration budget must be at least 1");
  }
  current_.committees.resize(e.num_levels());
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    current_.committees[t] = first_combination(e.k(t));
  }
}

bool ValidSequenceStream::next(CommitteeSequence& out) {
  if (done_) return false;
  if (started_ && !next_valid(e_, current_)) {
    done_ = true;
    return false;
  }
  started_ = true;
  if (produced_ == budget_.max_sequences) {
    done_ = true;
    truncated_ = true;
    if (budget_.on_exceed == EnumerationBudget::OnExceed::kError) {
      throw BudgetExceeded("more than " + std::to_string(budget_.max_sequences) +
                           " valid committee sequences");
    }
    return false;
  }
  ++produced_;
  out = current_;
  return true;
}

std::vector<CommitteeSequence> enumerate_valid(const Election& e,
                                               EnumerationBudget budget) {
  std::vector<CommitteeSequence> out;
  ValidSequenceStream stream(e, budget);
  CommitteeSequence x;
  while (stream.next(x)) out.push_back(x);
  return out;
}

std::vector<std::vector<std::vector<std::size_t>>> brute_best_level_committees(
    const Election& e) {
  std::vector<std::vector<std::vector<std::size_t>>> best(e.num_levels());
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    auto comb = first_combination(e.k(t));
    Score top = 0;
    do {
      Score s = 0;
      for (auto c : comb) {
        for (std::size_t a = 0; a < e.num_agents(); ++a) s += e.utility(t, a, c);
      }
      if (best[t].empty() || s > top) {
        best[t].assign(1, comb);
        top = s;
      } else if (s == top) {
        best[t].push_back(comb);
      }
    } while (next_combination(comb, e.num_candidates(t)));
  }
  return best;
}

namespace {

WinnerSet brute_sum(const Election& e, EnumerationBudget budget) {
  auto best = brute_best_level_committees(e);
  std::uint64_t total = 1;
  for (const auto& b : best) total = checked_mul(total, b.size());
  WinnerSet out;
  std::uint64_t limit = total;
  if (total > budget.max_sequences) {
    if (budget.on_exceed == EnumerationBudget::OnExceed::kError) {
      throw BudgetExceeded("sum-rule winner product exceeds the budget");
    }
    limit = budget.max_sequences;
    out.complete = false;
  }
  std::vector<std::size_t> pick(best.size(), 0);
  for (std::uint64_t i = 0; i < limit; ++i) {
    CommitteeSequence x;
    for (std::size_t t = 0; t < best.size(); ++t) x.committees.push_back(best[t][pick[t]]);
    out.winners.push_back(std::move(x));
    for (std::size_t t = best.size(); t-- > 0;) {
      if (++pick[t] < best[t].size()) break;
      pick[t] = 0;
    }
  }
  std::sort(out.winners.begin(), out.winners.end());
  return out;
}

// Definition-2 greedy, every tie explored, histograms rebuilt from scratch.
class GreedyPathExplorer {
 public:
  GreedyPathExplorer(const Election& e, EnumerationBudget budget)
      : e_(e), budget_(budget), positive_(e.num_levels()), target_(e.num_levels()) {}

  WinnerSet run() {
    CommitteeSequence x = empty_sequence(e_);
    for (std::size_t t = 0; t < e_.num_levels(); ++t) {
      for (std::size_t c = 0; c < e_.num_candidates(t); ++c) {
        Score col = 0;
        for (std::size_t a = 0; a < e_.num_agents(); ++a) col += e_.utility(t, a, c);
        if (col > 0) positive_[t].push_back(c);
      }
      target_[t] = std::min(e_.k(t), positive_[t].size());
      if (positive_[t].size() == target_[t]) x.committees[t] = positive_[t];
    }
    explore(x);
    WinnerSet out;
    out.winners.assign(leaves_.begin(), leaves_.end());
    return out;
  }

 private:
  void explore(const CommitteeSequence& x) {
    std::vector<std::pair<std::size_t, std::size_t>> moves;
    std::optional<SatHistogram> best;
    for (std::size_t t = 0; t < e_.num_levels(); ++t) {
      if (x.committees[t].size() >= target_[t]) continue;
      for (auto c : positive_[t]) {
        if (std::binary_search(x.committees[t].begin(), x.committees[t].end(), c)) continue;
        CommitteeSequence y = add(x, t, c);
        SatHistogram h = sat_histogram(e_, y);
        if (!best || lex_compare(h, *best) < 0) {
          best = std::move(h);
          moves.assign(1, {t, c});
        } else if (lex_compare(h, *best) == 0) {
          moves.emplace_back(t, c);
        }
      }
    }
    if (moves.empty()) {
      leaves_.insert(pad(x));
      return;
    }
    for (auto [t, c] : moves) {
      CommitteeSequence y = add(x, t, c);
      if (!visited_.insert(y).second) continue;
      if (visited_.size() > budget_.max_sequences) {
        throw BudgetExceeded("greedy path exploration exceeded its budget");
      }
      explore(y);
    }
  }

  static CommitteeSequence add(const CommitteeSequence& x, std::size_t t,
                               std::size_t c) {
    CommitteeSequence y = x;
    auto& xt = y.committees[t];
    xt.insert(std::upper_bound(xt.begin(), xt.end(), c), c);
    return y;
  }

  CommitteeSequence pad(CommitteeSequence x) const {
    for (std::size_t t = 0; t < e_.num_levels(); ++t) {
      auto& xt = x.committees[t];
      for (std::size_t c = 0; c < e_.num_candidates(t) && xt.size() < e_.k(t); ++c) {
        if (!std::binary_search(positive_[t].begin(), positive_[t].end(), c)) {
          xt.insert(std::upper_bound(xt.begin(), xt.end(), c), c);
        }
      }
    }
    return x;
  }

  const Election& e_;
  EnumerationBudget budget_;
  std::vector<std::vector<std::size_t>> positive_;
  std::vector<std::size_t> target_;
  std::set<CommitteeSequence> visited_;
  std::set<CommitteeSequence> leaves_;
};

void require_feasible(const Election& e) {
  if (!e.has_levels()) throw InfeasibleError("election has no levels");
}

}  // namespace

WinnerSet brute_rule(const Election& e, RuleId rule, EnumerationBudget budget) {
  require_feasible(e);
  switch (rule) {
    case RuleId::kSum:
      return brute_sum(e, budget);
    case RuleId::kGreedy:
      return GreedyPathExplorer(e, budget).run();
    case RuleId::kEgal:
      return detail::scan_serial(e, budget, detail::EgalKey{});
    case RuleId::kALS:
      return detail::scan_serial(e, budget, detail::WeightedKey{e, WeightOrder::kALS});
    case RuleId::kASL:
      return detail::scan_serial(e, budget, detail::WeightedKey{e, WeightOrder::kASL});
    case RuleId::kLex:
      return detail::scan_serial(e, budget, detail::LexKey{});
  }
  throw std::invalid_argument("unknown rule");
}

WinnerSet brute_two_stage(const Election& e, WeightOrder order,
                          EnumerationBudget budget) {
  WinnerSet egal = brute_rule(e, RuleId::kEgal, budget);
  auto filter = [&](auto score_fn) {
    Score top = 0;
    for (const auto& x : egal.winners) top = std::max(top, score_fn(x));
    std::erase_if(egal.winners, [&](const CommitteeSequence& x) { return score_fn(x) != top; });
  };
  auto level = [&](const CommitteeSequence& x) { return score_level_min(e, x); };
  auto sum = [&](const CommitteeSequence& x) { return score_sum(e, x); };
  if (order == WeightOrder::kALS) {
    filter(level);
    filter(sum);
  } else {
    filter(sum);
    filter(level);
  }
  return egal;
}

bool dominates(const Election& e, const CommitteeSequence& x,
               const CommitteeSequence& y) {
  const auto sx = agent_scores(e, x);
  const auto sy = agent_scores(e, y);
  bool strict = false;
  for (std::size_t a = 0; a < sx.size(); ++a) {
    if (sx[a] < sy[a]) return false;
    if (sx[a] > sy[a]) strict = true;
  }
  return strict;
}

Score brute_max_min_agent(const Election& e, EnumerationBudget budget) {
  require_feasible(e);
  Score best = 0;
  ValidSequenceStream stream(e, budget);
  CommitteeSequence x;
  while (stream.next(x)) best = std::max(best, score_agent_min(e, x));
  return best;
}

Election gen_partition_instance(std::span<const Utility> multiset) {
  if (multiset.empty()) throw DataError("partition multiset must be nonempty");
  std::vector<Level> levels;
  for (std::size_t t = 0; t < multiset.size(); ++t) {
    Level lv;
    lv.name = "x" + std::to_string(t + 1);
    lv.candidates = {"c1", "c2"};
    lv.k = 1;
    lv.utility = {multiset[t], 0, 0, multiset[t]};
    levels.push_back(std::move(lv));
  }
  return Election({"a1", "a2"}, std::move(levels), {"partition", "gadget", "", {}});
}

Election gen_binpacking_instance(std::span<const Utility> items,
                                 std::size_t bins) {
  if (items.empty() || bins == 0) throw DataError("bin packing needs items and bins");
  Utility m = 1;
  for (Utility x : items) m = checked_add(m, x);
  std::vector<std::string> agents, cands;
  for (std::size_t i = 0; i < bins; ++i) {
    agents.push_back("a" + std::to_string(i + 1));
    cands.push_back("c" + std::to_string(i + 1));
  }
  std::vector<Level> levels;
  for (std::size_t s = 0; s < items.size(); ++s) {
    Level lv;
    lv.name = "item" + std::to_string(s + 1);
    lv.candidates = cands;
    lv.k = 1;
    for (std::size_t i = 0; i < bins; ++i) {
      for (std::size_t j = 0; j < bins; ++j) lv.utility.push_back(i == j ? m - items[s] : m);
    }
    levels.push_back(std::move(lv));
  }
  return Election(std::move(agents), std::move(levels), {"binpacking", "gadget", "", {}});
}

Score binpacking_threshold(std::span<const Utility> items, Score capacity) {
  Score m = 1;
  for (Utility x : items) m = checked_add(m, x);
  return checked_mul(items.size(), m) - capacity;
}

Election gen_vertexcover_instance(
    std::size_t num_vertices,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges,
    std::size_t k) {
  if (edges.empty()) throw DataError("vertex cover instance needs at least one edge");
  Level lv;
  lv.name = "vertices";
  for (std::size_t v = 0; v < num_vertices; ++v) lv.candidates.push_back("v" + std::to_string(v));
  lv.k = k;
  std::vector<std::string> agents;
  for (auto [u, v] : edges) {
    if (u >= num_vertices || v >= num_vertices || u == v) {
      throw DataError("invalid edge");
    }
    agents.push_back("e" + std::to_string(u) + "_" + std::to_string(v));
    for (std::size_t c = 0; c < num_vertices; ++c) {
      lv.utility.push_back((c == u || c == v) ? 1 : 0);
    }
  }
  return Election(std::move(agents), {std::move(lv)}, {"vertexcover", "gadget", "", {}});
}

Election gen_random(const RandomElectionSpec& spec, std::mt19937_64& rng) {
  if (spec.agents == 0 || spec.levels == 0 || spec.min_candidates == 0 ||
      spec.min_candidates > spec.max_candidates || spec.min_k > spec.max_k) {
    throw DataError("invalid random election parameters");
  }
  std::uniform_int_distribution<std::size_t> cand_dist(spec.min_candidates, spec.max_candidates);
  std::uniform_int_distribution<Utility> util_dist(0, spec.max_utility);
  std::vector<std::string> agents;
  for (std::size_t a = 0; a < spec.agents; ++a) agents.push_back("a" + std::to_string(a + 1));
  std::vector<Level> levels;
  for (std::size_t t = 0; t < spec.levels; ++t) {
    Level lv;
    lv.name = "L" + std::to_string(t + 1);
    const std::size_t m = cand_dist(rng);
    for (std::size_t c = 0; c < m; ++c) lv.candidates.push_back("c" + std::to_string(c + 1));
    const std::size_t hi = std::min(spec.max_k, m);
    const std::size_t lo = std::min(spec.min_k, hi);
    lv.k = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    lv.utility.resize(spec.agents * m);
    for (auto& u : lv.utility) u = util_dist(rng);
    levels.push_back(std::move(lv));
  }
  return Election(std::move(agents), std::move(levels), {"random", "random", "", {}});
}

Election example1() {
  auto level = [](std::string name, std::vector<Utility> u) {
    Level lv;
    lv.name = std::move(name);
    lv.candidates = {"opt1", "opt2"};
    lv.k = 1;
    lv.utility = std::move(u);
    return lv;
  };
  // Rows: Ben, Dora, Eric, Fina.
  return Election({"Ben", "Dora", "Eric", "Fina"},
                  {level("breakfast", {0, 0, 3, 0, 3, 0, 0, 3}),
                   level("lunch", {2, 1, 3, 0, 3, 0, 0, 3}),
                   level("dinner", {2, 1, 1, 2, 1, 2, 0, 0})},
                  {"example1", "point", "", {}});
}

}  // namespace egalseq::oracle
