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


// Literal readings of the five properties, evaluated on brute-force winner
// sets. Sequences are compared through candidate ids so that none of the
// election algebra's index bookkeeping is reused.

#ifndef EGALSEQ_TESTS_LITERAL_HPP_
#define EGALSEQ_TESTS_LITERAL_HPP_

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "egalseq/model.hpp"
#include "egalseq/oracle.hpp"
#include "egalseq/rule_id.hpp"

namespace egalseq::testing {

using Ids = std::vector<std::vector<std::string>>;

inline std::vector<CommitteeSequence> brute(const Election& e, RuleId r) {
  return oracle::brute_rule(e, r).winners;
}

inline Ids sorted_ids(const Election& e, const CommitteeSequence& x) {
  Ids ids = sequence_to_ids(e, x);
  for (auto& c : ids) std::sort(c.begin(), c.end());
  return ids;
}

inline std::set<Ids> id_set(const Election& e, const std::vector<CommitteeSequence>& xs) {
  std::set<Ids> out;
  for (const auto& x : xs) out.insert(sorted_ids(e, x));
  return out;
}

// Safe concatenation / safe union: for all winner pairs some merged winner
// keeps the worst-off agent at least as well off. `combine` maps two id
// sequences to one over the merged election.
template <class Combine>
bool literal_merge_holds(const Election& e1, const Election& e2, const Election& merged,
                         RuleId r, Combine combine) {
  const auto w1 = brute(e1, r);
  const auto w2 = brute(e2, r);
  const auto w = brute(merged, r);
  for (const auto& x1 : w1) {
    for (const auto& x2 : w2) {
      const CommitteeSequence y =
          sequence_from_ids(merged, combine(sequence_to_ids(e1, x1), sequence_to_ids(e2, x2)));
      const Score target = score_agent_min(merged, y);
      const bool some = std::any_of(w.begin(), w.end(), [&](const CommitteeSequence& x) {
        return score_agent_min(merged, x) >= target;
      });
      if (!some) return false;
    }
  }
  return true;
}

inline Ids append_ids(const Ids& a, const Ids& b) {
  Ids out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Ids union_ids(const Ids& a, const Ids& b) {
  Ids out = a;
  for (std::size_t t = 0; t < out.size(); ++t) {
    for (const auto& c : b[t]) {
      if (std::find(out[t].begin(), out[t].end(), c) == out[t].end()) out[t].push_back(c);
    }
  }
  return out;
}

// Returns nullopt when the common winner set is empty.
inline std::optional<bool> literal_sub_consistency(const Election& e1, const Election& e2,
                                                   const Election& merged, RuleId r) {
  const auto s1 = id_set(e1, brute(e1, r));
  const auto s2 = id_set(e2, brute(e2, r));
  std::vector<Ids> common;
  std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(common));
  if (common.empty()) return std::nullopt;
  const auto s = id_set(merged, brute(merged, r));
  return std::all_of(common.begin(), common.end(), [&](const Ids& x) { return s.count(x) > 0; });
}

inline bool literal_pareto(const Election& e, RuleId r) {
  const auto all = oracle::enumerate_valid(e);
  for (const auto& x : brute(e, r)) {
    for (const auto& y : all) {
      const auto sx = agent_scores(e, x);
      const auto sy = agent_scores(e, y);
      bool ge = true, gt = false;
      for (std::size_t a = 0; a < sx.size(); ++a) {
        ge = ge && sy[a] >= sx[a];
        gt = gt || sy[a] > sx[a];
      }
      if (ge && gt) return false;
    }
  }
  return true;
}

// Winner set of `glued` equals the product of the parts' winner sets, the
// parts' levels appearing one after another.
inline bool literal_independent_groups(const Election& glued, const std::vector<Election>& parts,
                                       RuleId r) {
  std::set<Ids> product = {Ids{}};
  for (const auto& part : parts) {
    std::set<Ids> next;
    for (const auto& prefix : product) {
      for (const auto& x : brute(part, r)) next.insert(append_ids(prefix, sorted_ids(part, x)));
    }
    product = std::move(next);
  }
  return product == id_set(glued, brute(glued, r));
}

// Subset sum over a small multiset.
inline bool has_equal_partition(const std::vector<Utility>& xs) {
  Utility total = 0;
  for (auto x : xs) total += x;
  if (total % 2 != 0) return false;
  std::vector<bool> reach(total / 2 + 1, false);
  reach[0] = true;
  for (auto x : xs) {
    for (std::size_t s = reach.size(); s-- > x;) reach[s] = reach[s] || reach[s - x];
  }
  return reach[total / 2];
}

}  // namespace egalseq::testing

#endif  // EGALSEQ_TESTS_LITERAL_HPP_
