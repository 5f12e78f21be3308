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

// Exhaustive argmax scans shared by the serial and OpenMP oracles.

#ifndef EGALSEQ_SRC_ORACLE_SCAN_HPP_
#define EGALSEQ_SRC_ORACLE_SCAN_HPP_

#include <algorithm>
#include <compare>
#include <optional>
#include <vector>

#include "egalseq/model.hpp"
#include "egalseq/oracle.hpp"
#include "egalseq/rule_id.hpp"

namespace egalseq::oracle::detail {

// A key type plus a comparison where `greater` means strictly preferred.
struct EgalKey {
  using Key = Score;
  Key eval(const Election& e, const CommitteeSequence& x) const {
    return score_agent_min(e, x);
  }
  std::strong_ordering better(const Key& a, const Key& b) const { return a <=> b; }
};

struct WeightedKey {
  WeightedKey(const Election& e, WeightOrder o) : weights(compute_weights(e)), order(o) {}
  using Key = BigInt;
  Key eval(const Election& e, const CommitteeSequence& x) const {
    return weighted_objective(score_triple(e, x), weights, order);
  }
  std::strong_ordering better(const Key& a, const Key& b) const {
    return a < b ? std::strong_ordering::less
                 : (b < a ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  ObjectiveWeights weights;
  WeightOrder order;
};

struct LexKey {
  using Key = SatHistogram;
  Key eval(const Election& e, const CommitteeSequence& x) const {
    return sat_histogram(e, x);
  }
  std::strong_ordering better(const Key& a, const Key& b) const {
    return lex_compare(b, a);
  }
};

template <class Spec>
struct ScanState {
  std::optional<typename Spec::Key> best;
  std::vector<CommitteeSequence> winners;

  void offer(const Spec& spec, typename Spec::Key key, const CommitteeSequence& x) {
    if (!best) {
      best = std::move(key);
      winners.assign(1, x);
      return;
    }
    const auto cmp = spec.better(key, *best);
    if (cmp > 0) {
      best = std::move(key);
      winners.assign(1, x);
    } else if (cmp == 0) {
      winners.push_back(x);
    }
  }

  void merge(const Spec& spec, ScanState&& other) {
    if (!other.best) return;
    if (!best) {
      *this = std::move(other);
      return;
    }
    const auto cmp = spec.better(*other.best, *best);
    if (cmp > 0) {
      *this = std::move(other);
    } else if (cmp == 0) {
      winners.insert(winners.end(), other.winners.begin(), other.winners.end());
    }
  }
};

template <class Spec>
WinnerSet scan_serial(const Election& e, EnumerationBudget budget, const Spec& spec) {
  ScanState<Spec> state;
  ValidSequenceStream stream(e, budget);
  CommitteeSequence x;
  while (stream.next(x)) state.offer(spec, spec.eval(e, x), x);
  WinnerSet out;
  out.winners = std::move(state.winners);
  out.complete = !stream.truncated();
  std::sort(out.winners.begin(), out.winners.end());
  return out;
}

}  // namespace egalseq::oracle::detail

#endif  // EGALSEQ_SRC_ORACLE_SCAN_HPP_
