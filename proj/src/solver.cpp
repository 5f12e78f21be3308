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

#include "egalseq/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

namespace egalseq::solver {

namespace {

using u128 = unsigned __int128;
using Clock = std::chrono::steady_clock;

constexpr Score kNoScore = std::numeric_limits<Score>::max();

// Per level and agent, the best r utilities among candidates start..m-1.
// Indexed [(start * (k + 1) + r) * n + agent]; the column-sum table is the
// same without the agent dimension.
class Tables {
 public:
  explicit Tables(const Election& e)
      : n_(e.num_agents()), tau_(e.num_levels()),
        agent_suffix_(tau_), col_suffix_(tau_),
        agent_future_(tau_ + 1, std::vector<Score>(n_, 0)),
        level_future_min_(tau_ + 1, kNoScore), level_future_sum_(tau_ + 1, 0) {
    for (std::size_t t = 0; t < tau_; ++t) {
      k_.push_back(e.k(t));
      m_.push_back(e.num_candidates(t));
      build_level(e, t);
    }
    for (std::size_t t = tau_; t-- > 0;) {
      for (std::size_t a = 0; a < n_; ++a) {
        agent_future_[t][a] = agent_future_[t + 1][a] + agent_top(t, 0, k_[t], a);
      }
      const Score best = col_top(t, 0, k_[t]);
      level_future_min_[t] = std::min(level_future_min_[t + 1], best);
      level_future_sum_[t] = level_future_sum_[t + 1] + best;
    }
  }

  std::size_t num_agents() const { return n_; }
  std::size_t num_levels() const { return tau_; }
  std::size_t k(std::size_t t) const { return k_[t]; }
  std::size_t m(std::size_t t) const { return m_[t]; }

  Score agent_top(std::size_t t, std::size_t start, std::size_t r, std::size_t a) const {
    return agent_suffix_[t][(start * (k_[t] + 1) + r) * n_ + a];
  }
  Score col_top(std::size_t t, std::size_t start, std::size_t r) const {
    return col_suffix_[t][start * (k_[t] + 1) + r];
  }
  // Sum over levels t.. of the agent's best full committee.
  Score agent_future(std::size_t t, std::size_t a) const { return agent_future_[t][a]; }
  Score level_future_min(std::size_t t) const { return level_future_min_[t]; }
  Score level_future_sum(std::size_t t) const { return level_future_sum_[t]; }

 private:
  // Top-k prefix sums of a suffix, kept as a descending list of at most k.
  static void top_prefix(std::vector<Score>& top, Score v, std::size_t k,
                         Score* out) {
    if (k > 0) {
      auto it = std::upper_bound(top.begin(), top.end(), v, std::greater<>());
      top.insert(it, v);
      if (top.size() > k) top.pop_back();
    }
    Score acc = 0;
    for (std::size_t r = 0; r <= k; ++r) {
      out[r] = acc;
      if (r < top.size()) acc += top[r];
    }
  }

  void build_level(const Election& e, std::size_t t) {
    const std::size_t k = k_[t], m = m_[t];
    agent_suffix_[t].assign((m + 1) * (k + 1) * n_, 0);
    col_suffix_[t].assign((m + 1) * (k + 1), 0);
    std::vector<Score> buf(k + 1);
    for (std::size_t a = 0; a < n_; ++a) {
      std::vector<Score> top;
      auto row = e.row(t, a);
      for (std::size_t start = m; start-- > 0;) {
        top_prefix(top, row[start], k, buf.data());
        for (std::size_t r = 0; r <= k; ++r) {
          agent_suffix_[t][(start * (k + 1) + r) * n_ + a] = buf[r];
        }
      }
    }
    std::vector<Score> top;
    for (std::size_t start = m; start-- > 0;) {
      top_prefix(top, e.column_sum(t, start), k, &col_suffix_[t][start * (k + 1)]);
    }
  }

  std::size_t n_, tau_;
  std::vector<std::size_t> k_, m_;
  std::vector<std::vector<Score>> agent_suffix_;
  std::vector<std::vector<Score>> col_suffix_;
  std::vector<std::vector<Score>> agent_future_;
  std::vector<Score> level_future_min_;
  std::vector<Score> level_future_sum_;
};

// What a search node or leaf looks like to an objective. At a leaf the bounds
// are the actual values.
struct NodeView {
  std::span<const Score> scores;
  std::span<const Score> bounds;
  Score level_min = 0;
  Score total = 0;
};

// Whether anything below a node can beat the incumbent.
enum class Reach { kCannot, kTie, kMaybe };

Reach reach_of(std::strong_ordering bound_vs_incumbent) {
  if (bound_vs_incumbent < 0) return Reach::kCannot;
  if (bound_vs_incumbent == 0) return Reach::kTie;
  return Reach::kMaybe;
}

Score min_of(std::span<const Score> v) { return *std::min_element(v.begin(), v.end()); }

void sorted_into(std::span<const Score> v, Score clip, std::vector<Score>& out) {
  out.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::min(v[i], clip);
  std::sort(out.begin(), out.end());
}

struct EgalSpec {
  using Key = Score;
  std::optional<Key> leaf(const NodeView& v) { return min_of(v.scores); }
  Reach reach(const NodeView& v, const Key* inc) {
    return inc ? reach_of(min_of(v.bounds) <=> *inc) : Reach::kMaybe;
  }
  std::strong_ordering better(const Key& a, const Key& b) const { return a <=> b; }
};

// theta*sigma*A + sigma*L + S (ALS) or theta*sigma*A + L + theta*S (ASL) in
// 128-bit arithmetic; only used when the largest value provably fits.
struct WeightedSpec {
  using Key = u128;
  WeightedSpec(const ObjectiveWeights& w, WeightOrder order) {
    wa = static_cast<u128>(w.theta) * w.sigma;
    wl = order == WeightOrder::kALS ? w.sigma : 1;
    ws = order == WeightOrder::kALS ? 1 : w.theta;
  }
  Key dot(Score a, Score l, Score s) const { return wa * a + wl * l + ws * s; }
  std::optional<Key> leaf(const NodeView& v) { return dot(min_of(v.scores), v.level_min, v.total); }
  Reach reach(const NodeView& v, const Key* inc) {
    return inc ? reach_of(dot(min_of(v.bounds), v.level_min, v.total) <=> *inc) : Reach::kMaybe;
  }
  std::strong_ordering better(const Key& a, const Key& b) const { return a <=> b; }
  u128 wa, wl, ws;
};

// Lexicographic (A, L, S) or (A, S, L): the same argmax as the weighted
// objective, used when the weighted values would not fit in 128 bits.
struct TupleSpec {
  using Key = std::array<Score, 3>;
  WeightOrder order;
  Key make(Score a, Score l, Score s) const {
    return order == WeightOrder::kALS ? Key{a, l, s} : Key{a, s, l};
  }
  std::optional<Key> leaf(const NodeView& v) { return make(min_of(v.scores), v.level_min, v.total); }
  Reach reach(const NodeView& v, const Key* inc) {
    return inc ? reach_of(make(min_of(v.bounds), v.level_min, v.total) <=> *inc) : Reach::kMaybe;
  }
  std::strong_ordering better(const Key& a, const Key& b) const { return a <=> b; }
};

// Leximin over scores clipped at `clip`, with the histogram below `frozen_below`
// pinned to `frozen` (one entry per score, ascending).
struct LexSpec {
  using Key = std::vector<Score>;
  Score clip = kNoScore;
  Score frozen_below = 0;
  std::vector<std::pair<Score, std::size_t>> frozen;
  bool min_only = false;
  std::vector<Score> scratch;

  std::optional<Key> leaf(const NodeView& v) {
    Key key;
    sorted_into(v.scores, clip, key);
    if (frozen_below > 0 && histogram_below(key) != frozen) return std::nullopt;
    return key;
  }
  Reach reach(const NodeView& v, const Key* inc) {
    if (!inc) return Reach::kMaybe;
    if (min_only) {
      return std::min(min_of(v.bounds), clip) < inc->front() ? Reach::kCannot : Reach::kMaybe;
    }
    sorted_into(v.bounds, clip, scratch);
    return reach_of(scratch <=> *inc);
  }
  std::strong_ordering better(const Key& a, const Key& b) const { return a <=> b; }

  std::vector<std::pair<Score, std::size_t>> histogram_below(const Key& sorted) const {
    std::vector<std::pair<Score, std::size_t>> h;
    for (Score s : sorted) {
      if (s >= frozen_below) break;
      if (!h.empty() && h.back().first == s) {
        ++h.back().second;
      } else {
        h.emplace_back(s, 1);
      }
    }
    return h;
  }
};

// Sorted-prefix feasibility shared by the point-round objectives: a leaf must
// start with `prefix`; a node cannot if its sorted bounds fall below it.
bool prefix_reachable(const std::vector<Score>& sorted_bounds,
                      const std::vector<Score>& prefix) {
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (sorted_bounds[i] < prefix[i]) return false;
  }
  return true;
}

bool has_prefix(const std::vector<Score>& sorted, const std::vector<Score>& prefix) {
  return std::equal(prefix.begin(), prefix.end(), sorted.begin());
}

// Round step one: maximize the smallest score after the frozen prefix.
struct NextMinSpec {
  using Key = Score;
  std::vector<Score> prefix;
  std::vector<Score> scratch;

  std::optional<Key> leaf(const NodeView& v) {
    sorted_into(v.scores, kNoScore, scratch);
    if (!has_prefix(scratch, prefix)) return std::nullopt;
    return scratch[prefix.size()];
  }
  Reach reach(const NodeView& v, const Key* inc) {
    sorted_into(v.bounds, kNoScore, scratch);
    if (!prefix_reachable(scratch, prefix)) return Reach::kCannot;
    return inc ? reach_of(scratch[prefix.size()] <=> *inc) : Reach::kMaybe;
  }
  std::strong_ordering better(const Key& a, const Key& b) const { return a <=> b; }
};

// Round step two: with the next score pinned to `next`, maximize how many
// agents end strictly above it.
struct MultiplicitySpec {
  using Key = std::size_t;
  std::vector<Score> prefix;
  Score next = 0;
  std::vector<Score> scratch;

  std::size_t above(const std::vector<Score>& sorted) const {
    return static_cast<std::size_t>(
        sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), next));
  }
  std::optional<Key> leaf(const NodeView& v) {
    sorted_into(v.scores, kNoScore, scratch);
    if (!has_prefix(scratch, prefix) || scratch[prefix.size()] != next) return std::nullopt;
    return above(scratch);
  }
  Reach reach(const NodeView& v, const Key* inc) {
    sorted_into(v.bounds, kNoScore, scratch);
    if (!prefix_reachable(scratch, prefix) || scratch[prefix.size()] < next) {
      return Reach::kCannot;
    }
    return inc ? reach_of(above(scratch) <=> *inc) : Reach::kMaybe;
  }
  std::strong_ordering better(const Key& a, const Key& b) const { return a <=> b; }
};

// Every leaf whose sorted scores equal `target` ties; others are infeasible.
struct ExactSortedSpec {
  using Key = int;
  std::vector<Score> target;
  std::vector<Score> scratch;

  std::optional<Key> leaf(const NodeView& v) {
    sorted_into(v.scores, kNoScore, scratch);
    if (scratch != target) return std::nullopt;
    return 0;
  }
  Reach reach(const NodeView& v, const Key*) {
    sorted_into(v.bounds, kNoScore, scratch);
    return prefix_reachable(scratch, target) ? Reach::kTie : Reach::kCannot;
  }
  std::strong_ordering better(const Key& a, const Key& b) const { return a <=> b; }
};

// Valid sequences giving every agent at least `floor`; maximizes the total
// score, and only totals above `threshold` count as feasible. Any feasible
// leaf dominates the sequence the floor came from, so the search stops
// pruning-wise after the first one.
struct DominanceSpec {
  using Key = Score;
  std::vector<Score> floor;
  Score threshold = 0;
  bool found = false;

  std::optional<Key> leaf(const NodeView& v) {
    for (std::size_t a = 0; a < floor.size(); ++a) {
      if (v.scores[a] < floor[a]) return std::nullopt;
    }
    if (v.total <= threshold) return std::nullopt;
    found = true;
    return v.total;
  }
  Reach reach(const NodeView& v, const Key*) {
    if (found || v.total <= threshold) return Reach::kCannot;
    for (std::size_t a = 0; a < floor.size(); ++a) {
      if (v.bounds[a] < floor[a]) return Reach::kCannot;
    }
    return Reach::kMaybe;
  }
  std::strong_ordering better(const Key& a, const Key& b) const { return a <=> b; }
};

struct Abort {};

// Node and wall-clock limits shared by every search of one solve call.
class Budget {
 public:
  explicit Budget(const SolveConfig& c)
      : deadline_(Clock::now() + c.time_budget), max_nodes_(c.node_budget) {}
  void tick() {
    ++nodes_;
    if (nodes_ > max_nodes_) throw Abort{};
    if ((nodes_ & 1023) == 0 && Clock::now() > deadline_) throw Abort{};
  }

 private:
  Clock::time_point deadline_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
};

template <class Spec>
class Search {
 public:
  using Key = typename Spec::Key;

  Search(const Election& e, const Tables& tables, const SolveConfig& config,
         Budget& budget, Spec spec, bool collect_all,
         const std::set<CommitteeSequence>* excluded = nullptr)
      : e_(e), tb_(tables), cap_(config.winner_cap), budget_(budget),
        spec_(std::move(spec)), collect_all_(collect_all), excluded_(excluded),
        scores_(e.num_agents(), 0), bounds_(e.num_agents(), 0),
        x_(empty_sequence(e)) {
    if (config.hint) seed(*config.hint);
  }

  void run() {
    try {
      visit(0, 0, 0);
    } catch (const Abort&) {
      aborted_ = true;
    }
  }

  bool found() const { return found_by_dfs_ || best_key_.has_value(); }
  bool aborted() const { return aborted_; }
  const std::optional<Key>& best_key() const { return best_key_; }
  const CommitteeSequence& best() const { return best_; }
  const std::vector<CommitteeSequence>& ties() const { return ties_; }
  std::uint64_t tie_count() const { return tie_count_; }
  const SolveStats& stats() const { return stats_; }

 private:
  void seed(const CommitteeSequence& hint) {
    if (!is_valid(e_, hint)) return;
    if (excluded_ && excluded_->contains(hint)) return;
    const auto s = agent_scores(e_, hint);
    NodeView v{s, s, score_level_min(e_, hint), score_sum(e_, hint)};
    if (auto key = spec_.leaf(v)) {
      best_key_ = std::move(key);
      best_ = hint;
    }
  }

  bool ties_irrelevant() const {
    return collect_all_ ? tie_count_ > cap_ : found_by_dfs_;
  }

  void visit(std::size_t t, std::size_t start, std::size_t j) {
    budget_.tick();
    ++stats_.nodes;
    if (t == tb_.num_levels()) {
      leaf();
      return;
    }
    if (j == tb_.k(t)) {
      const Score saved_min = level_min_done_, saved_sum = sum_done_, saved_cur = cur_level_;
      level_min_done_ = std::min(level_min_done_, cur_level_);
      sum_done_ += cur_level_;
      cur_level_ = 0;
      visit(t + 1, 0, 0);
      level_min_done_ = saved_min;
      sum_done_ = saved_sum;
      cur_level_ = saved_cur;
      return;
    }
    const std::size_t r = tb_.k(t) - j;
    if (prune(t, start, r)) {
      ++stats_.pruned;
      return;
    }
    for (std::size_t c = start; c + r <= tb_.m(t); ++c) {
      add(t, c);
      visit(t, c + 1, j + 1);
      remove(t, c);
    }
  }

  bool prune(std::size_t t, std::size_t start, std::size_t r) {
    for (std::size_t a = 0; a < scores_.size(); ++a) {
      bounds_[a] = scores_[a] + tb_.agent_top(t, start, r, a) + tb_.agent_future(t + 1, a);
    }
    const Score here = cur_level_ + tb_.col_top(t, start, r);
    NodeView v{scores_, bounds_,
               std::min({level_min_done_, here, tb_.level_future_min(t + 1)}),
               sum_done_ + here + tb_.level_future_sum(t + 1)};
    switch (spec_.reach(v, best_key_ ? &*best_key_ : nullptr)) {
      case Reach::kCannot: return true;
      case Reach::kTie: return ties_irrelevant();
      case Reach::kMaybe: return false;
    }
    return false;
  }

  void leaf() {
    ++stats_.leaves;
    if (excluded_ && excluded_->contains(x_)) return;
    NodeView v{scores_, scores_, level_min_done_, sum_done_};
    auto key = spec_.leaf(v);
    if (!key) return;
    const auto cmp = best_key_ ? spec_.better(*key, *best_key_) : std::strong_ordering::greater;
    if (cmp > 0) {
      best_key_ = std::move(key);
      best_ = x_;
      found_by_dfs_ = true;
      ties_.clear();
      tie_count_ = 0;
    } else if (cmp < 0) {
      return;
    } else if (!found_by_dfs_) {
      best_ = x_;
      found_by_dfs_ = true;
    }
    if (collect_all_ && tie_count_ <= cap_) {
      ties_.push_back(x_);
      ++tie_count_;
    }
  }

  void add(std::size_t t, std::size_t c) {
    x_.committees[t].push_back(c);
    for (std::size_t a = 0; a < scores_.size(); ++a) scores_[a] += e_.utility(t, a, c);
    cur_level_ += e_.column_sum(t, c);
  }
  void remove(std::size_t t, std::size_t c) {
    x_.committees[t].pop_back();
    for (std::size_t a = 0; a < scores_.size(); ++a) scores_[a] -= e_.utility(t, a, c);
    cur_level_ -= e_.column_sum(t, c);
  }

  const Election& e_;
  const Tables& tb_;
  std::size_t cap_;
  Budget& budget_;
  Spec spec_;
  bool collect_all_;
  const std::set<CommitteeSequence>* excluded_;

  std::vector<Score> scores_, bounds_;
  CommitteeSequence x_;
  Score level_min_done_ = kNoScore;
  Score sum_done_ = 0;
  Score cur_level_ = 0;

  std::optional<Key> best_key_;
  CommitteeSequence best_;
  bool found_by_dfs_ = false;
  std::vector<CommitteeSequence> ties_;
  std::uint64_t tie_count_ = 0;
  bool aborted_ = false;
  SolveStats stats_;
};

void require_solvable(const Election& e, const SolveConfig& config) {
  if (!e.has_levels()) throw InfeasibleError("election has no levels");
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    if (e.k(t) > e.num_candidates(t)) throw InfeasibleError("k_t exceeds |C_t|");
  }
  if (config.winner_cap == 0 || config.node_budget == 0 ||
      config.time_budget.count() <= 0) {
    throw std::invalid_argument("solver limits must be positive");
  }
}

void accumulate(SolveStats& into, const SolveStats& s) {
  into.nodes += s.nodes;
  into.leaves += s.leaves;
  into.pruned += s.pruned;
  into.searches += 1;
}

bool weighted_fits_128(const Election& e, WeightOrder order) {
  const ObjectiveWeights w = compute_weights(e);
  ScoreTriple worst{e.max_possible_agent_score(), w.theta - 1, w.sigma - 1};
  const BigInt limit = (BigInt(1) << 128) - 1;
  return weighted_objective(worst, w, order) <= limit;
}

// Calls f with the spec that implements the objective.
template <class F>
decltype(auto) with_spec(const Election& e, const Objective& obj, const SolveConfig& config,
                         F&& f) {
  switch (obj.kind) {
    case ObjectiveKind::kMaxMinAgent:
      return f(EgalSpec{});
    case ObjectiveKind::kWeighted:
      if (weighted_fits_128(e, obj.order)) return f(WeightedSpec(compute_weights(e), obj.order));
      return f(TupleSpec{obj.order});
    case ObjectiveKind::kLexHistogram: {
      LexSpec spec;
      spec.min_only = config.lex_pruning == LexPruning::kMinAgent;
      return f(std::move(spec));
    }
  }
  throw std::invalid_argument("unknown objective");
}

// A finished search packaged as a single-winner result.
template <class Spec>
SolveResult one_result(const Search<Spec>& s, SolveStats stats) {
  if (!s.found()) {
    if (s.aborted()) throw BudgetExceeded("solver budget ran out before any valid sequence");
    throw InfeasibleError("no sequence satisfies the objective constraints");
  }
  return SolveResult{s.best(), !s.aborted(), stats};
}

template <class Spec>
SolveAllResult all_result(const Search<Spec>& s, SolveStats stats, std::size_t cap) {
  SolveAllResult out;
  out.winners.winners = s.ties();
  std::sort(out.winners.winners.begin(), out.winners.winners.end());
  // One tie past the cap is kept only to learn that more winners exist.
  if (out.winners.winners.size() > cap) out.winners.winners.resize(cap);
  out.winners.complete = !s.aborted() && s.tie_count() <= cap;
  out.optimal = !s.aborted();
  out.stats = stats;
  if (out.winners.winners.empty() && s.aborted()) {
    throw BudgetExceeded("solver budget ran out before any winner was found");
  }
  return out;
}

template <class Spec>
SolveResult run_one(const Election& e, const Tables& tb, const SolveConfig& config,
                    Budget& budget, Spec spec, SolveStats& stats) {
  Search<Spec> s(e, tb, config, budget, std::move(spec), false);
  s.run();
  accumulate(stats, s.stats());
  return one_result(s, stats);
}

template <class Spec>
SolveAllResult run_all(const Election& e, const Tables& tb, const SolveConfig& config,
                       Budget& budget, Spec spec, SolveStats& stats) {
  Search<Spec> s(e, tb, config, budget, std::move(spec), true);
  s.run();
  accumulate(stats, s.stats());
  return all_result(s, stats, config.winner_cap);
}

bool is_lex(const Objective& obj) { return obj.kind == ObjectiveKind::kLexHistogram; }

std::vector<std::pair<Score, std::size_t>> histogram_of(std::vector<Score> scores) {
  std::sort(scores.begin(), scores.end());
  std::vector<std::pair<Score, std::size_t>> h;
  for (Score s : scores) {
    if (!h.empty() && h.back().first == s) {
      ++h.back().second;
    } else {
      h.emplace_back(s, 1);
    }
  }
  return h;
}

// Runs the staged lex searches up to the last window; `last` receives the
// spec for the final (unclipped) stage.
SolveResult staged_prefix(const Election& e, const Tables& tb, const SolveConfig& config,
                          Budget& budget, SolveStats& stats, LexSpec& last) {
  const Score z = e.max_possible_agent_score();
  const Score width = config.lex_window > 0 ? config.lex_window
                                             : default_lex_window(e.num_agents());
  SolveResult result;
  LexSpec spec;
  spec.min_only = config.lex_pruning == LexPruning::kMinAgent;
  for (Score lo = 0;; lo += width) {
    const Score hi = lo + width;
    spec.clip = hi > z ? kNoScore : hi;
    if (spec.clip == kNoScore) break;
    result = run_one(e, tb, config, budget, spec, stats);
    if (!result.optimal) return result;
    auto frozen = histogram_of(agent_scores(e, result.sequence));
    std::erase_if(frozen, [&](const auto& p) { return p.first >= hi; });
    spec.frozen = std::move(frozen);
    spec.frozen_below = hi;
  }
  last = std::move(spec);
  result.optimal = true;
  return result;
}

// Freezes the optimal sorted score vector one (score, multiplicity) round
// at a time.
std::optional<std::vector<Score>> point_rounds(const Election& e, const Tables& tb,
                                               const SolveConfig& config, Budget& budget,
                                               SolveStats& stats, SolveResult& last) {
  const std::size_t n = e.num_agents();
  std::vector<Score> prefix;
  while (prefix.size() < n) {
    NextMinSpec first;
    first.prefix = prefix;
    SolveResult r1 = run_one(e, tb, config, budget, first, stats);
    if (!r1.optimal) {
      last = r1;
      return std::nullopt;
    }
    auto sorted = agent_scores(e, r1.sequence);
    std::sort(sorted.begin(), sorted.end());
    MultiplicitySpec second;
    second.prefix = prefix;
    second.next = sorted[prefix.size()];
    SolveResult r2 = run_one(e, tb, config, budget, second, stats);
    last = r2;
    if (!r2.optimal) return std::nullopt;
    sorted = agent_scores(e, r2.sequence);
    std::sort(sorted.begin(), sorted.end());
    const auto above = static_cast<std::size_t>(
        sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), second.next));
    prefix.resize(n - above, second.next);
  }
  return prefix;
}

}  // namespace

Objective objective_for(RuleId rule) {
  switch (rule) {
    case RuleId::kEgal: return Objective::max_min_agent();
    case RuleId::kALS: return Objective::weighted(WeightOrder::kALS);
    case RuleId::kASL: return Objective::weighted(WeightOrder::kASL);
    case RuleId::kLex: return Objective::lex();
    default: break;
  }
  throw std::invalid_argument("rule has no solver objective: " + std::string(rule_name(rule)));
}

std::size_t default_lex_window(std::size_t num_agents) {
  const double w = std::floor(std::log(1e17) / std::log(static_cast<double>(num_agents) + 1.0));
  return w > 2.0 ? static_cast<std::size_t>(w) - 1 : 1;
}

SolveResult BranchAndBoundBackend::solve_one(const Election& e, const Objective& obj,
                                             const SolveConfig& config) const {
  require_solvable(e, config);
  Tables tb(e);
  Budget budget(config);
  SolveStats stats;
  return with_spec(e, obj, config, [&](auto spec) {
    return run_one(e, tb, config, budget, std::move(spec), stats);
  });
}

SolveAllResult BranchAndBoundBackend::solve_all(const Election& e, const Objective& obj,
                                                const SolveConfig& config) const {
  require_solvable(e, config);
  Tables tb(e);
  Budget budget(config);
  SolveStats stats;
  return with_spec(e, obj, config, [&](auto spec) {
    return run_all(e, tb, config, budget, std::move(spec), stats);
  });
}

SolveResult StagedLexBackend::solve_one(const Election& e, const Objective& obj,
                                        const SolveConfig& config) const {
  if (!is_lex(obj)) return BranchAndBoundBackend().solve_one(e, obj, config);
  require_solvable(e, config);
  Tables tb(e);
  Budget budget(config);
  SolveStats stats;
  LexSpec last;
  SolveResult partial = staged_prefix(e, tb, config, budget, stats, last);
  if (!partial.optimal) return partial;
  return run_one(e, tb, config, budget, std::move(last), stats);
}

SolveAllResult StagedLexBackend::solve_all(const Election& e, const Objective& obj,
                                           const SolveConfig& config) const {
  if (!is_lex(obj)) return BranchAndBoundBackend().solve_all(e, obj, config);
  require_solvable(e, config);
  Tables tb(e);
  Budget budget(config);
  SolveStats stats;
  LexSpec last;
  SolveResult partial = staged_prefix(e, tb, config, budget, stats, last);
  if (!partial.optimal) {
    SolveAllResult out;
    out.winners.winners = {partial.sequence};
    out.winners.complete = false;
    out.optimal = false;
    out.stats = partial.stats;
    return out;
  }
  return run_all(e, tb, config, budget, std::move(last), stats);
}

SolveResult PointRoundsLexBackend::solve_one(const Election& e, const Objective& obj,
                                             const SolveConfig& config) const {
  if (!is_lex(obj)) return BranchAndBoundBackend().solve_one(e, obj, config);
  require_solvable(e, config);
  Tables tb(e);
  Budget budget(config);
  SolveStats stats;
  SolveResult last;
  point_rounds(e, tb, config, budget, stats, last);
  last.stats = stats;
  return last;
}

SolveAllResult PointRoundsLexBackend::solve_all(const Election& e, const Objective& obj,
                                                const SolveConfig& config) const {
  if (!is_lex(obj)) return BranchAndBoundBackend().solve_all(e, obj, config);
  require_solvable(e, config);
  Tables tb(e);
  Budget budget(config);
  SolveStats stats;
  SolveResult last;
  auto target = point_rounds(e, tb, config, budget, stats, last);
  if (!target) {
    SolveAllResult out;
    out.winners.winners = {last.sequence};
    out.winners.complete = false;
    out.optimal = false;
    out.stats = stats;
    return out;
  }
  ExactSortedSpec spec;
  spec.target = std::move(*target);
  return run_all(e, tb, config, budget, std::move(spec), stats);
}

const SolverBackend& backend_for(const SolveConfig& config) {
  static const BranchAndBoundBackend bnb;
  static const StagedLexBackend staged;
  static const PointRoundsLexBackend rounds;
  switch (config.lex_backend) {
    case LexBackend::kStaged: return staged;
    case LexBackend::kPointRounds: return rounds;
    case LexBackend::kBranchAndBound: break;
  }
  return bnb;
}

SolveResult solve_one(const Election& e, const Objective& obj, const SolveConfig& config) {
  return backend_for(config).solve_one(e, obj, config);
}

SolveAllResult solve_all(const Election& e, const Objective& obj, const SolveConfig& config) {
  return backend_for(config).solve_all(e, obj, config);
}

SolveAllResult solve_all_by_exclusion(const Election& e, const Objective& obj,
                                      const SolveConfig& config) {
  require_solvable(e, config);
  Tables tb(e);
  Budget budget(config);
  SolveStats stats;
  return with_spec(e, obj, config, [&](auto spec) {
    using Spec = decltype(spec);
    std::set<CommitteeSequence> found;
    std::optional<typename Spec::Key> optimum;
    SolveAllResult out;
    while (true) {
      Search<Spec> s(e, tb, config, budget, spec, false, &found);
      s.run();
      accumulate(stats, s.stats());
      if (s.aborted()) {
        out.winners.complete = false;
        out.optimal = false;
        break;
      }
      if (!s.found()) break;
      if (optimum && spec.better(*s.best_key(), *optimum) < 0) break;
      if (found.size() == config.winner_cap) {
        out.winners.complete = false;
        break;
      }
      if (!optimum) optimum = s.best_key();
      found.insert(s.best());
    }
    if (found.empty()) throw BudgetExceeded("solver budget ran out before any winner was found");
    out.winners.winners.assign(found.begin(), found.end());
    out.stats = stats;
    return out;
  });
}

std::optional<CommitteeSequence> find_dominating(const Election& e, const CommitteeSequence& x,
                                                 const SolveConfig& config) {
  require_solvable(e, config);
  if (!is_valid(e, x)) throw DataError("sequence is not valid for the election");
  Tables tb(e);
  Budget budget(config);
  DominanceSpec spec;
  spec.floor = agent_scores(e, x);
  spec.threshold = score_sum(e, x);
  SolveConfig c = config;
  c.hint.reset();
  Search<DominanceSpec> s(e, tb, c, budget, std::move(spec), false);
  s.run();
  if (s.found()) return s.best();
  if (s.aborted()) throw BudgetExceeded("dominance search ran out of budget");
  return std::nullopt;
}

SolveResult staged_lex_solve(const Election& e, const SolveConfig& config) {
  return StagedLexBackend().solve_one(e, Objective::lex(), config);
}

std::strong_ordering compare_objective(const Election& e, const Objective& obj,
                                       const CommitteeSequence& a,
                                       const CommitteeSequence& b) {
  switch (obj.kind) {
    case ObjectiveKind::kMaxMinAgent:
      return score_agent_min(e, a) <=> score_agent_min(e, b);
    case ObjectiveKind::kWeighted: {
      const BigInt va = weighted_objective(e, a, obj.order);
      const BigInt vb = weighted_objective(e, b, obj.order);
      return va < vb ? std::strong_ordering::less
                     : (vb < va ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    case ObjectiveKind::kLexHistogram:
      return lex_compare(sat_histogram(e, b), sat_histogram(e, a));
  }
  throw std::invalid_argument("unknown objective");
}

OptimisticBounds optimistic_bounds(const Election& e, const CommitteeSequence& partial) {
  check_consistent(e, partial);
  Tables tb(e);
  std::size_t t = 0;
  while (t < e.num_levels() && partial.committees[t].size() == e.k(t)) ++t;
  for (std::size_t later = t + 1; later < e.num_levels(); ++later) {
    if (!partial.committees[later].empty()) {
      throw DataError("partial sequence has committees after an unfinished level");
    }
  }
  OptimisticBounds out;
  out.agent = agent_scores(e, partial);
  Score level_min = kNoScore, total = 0;
  for (std::size_t done = 0; done < t; ++done) {
    const Score s = score_level(e, partial, done);
    level_min = std::min(level_min, s);
    total += s;
  }
  if (t == e.num_levels()) {
    out.level_min = level_min;
    out.total = total;
    return out;
  }
  const auto& xt = partial.committees[t];
  if (xt.size() > e.k(t)) throw DataError("committee larger than k_t");
  const std::size_t start = xt.empty() ? 0 : xt.back() + 1;
  const std::size_t r = e.k(t) - xt.size();
  for (std::size_t a = 0; a < e.num_agents(); ++a) {
    out.agent[a] += tb.agent_top(t, start, r, a) + tb.agent_future(t + 1, a);
  }
  const Score here = score_level(e, partial, t) + tb.col_top(t, start, r);
  out.level_min = std::min({level_min, here, tb.level_future_min(t + 1)});
  out.total = total + here + tb.level_future_sum(t + 1);
  return out;
}

}  // namespace egalseq::solver
