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

#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "egalseq/oracle.hpp"
#include "oracle_scan.hpp"

namespace egalseq::oracle {

namespace {

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

// Each thread takes a contiguous slice of the index space, unranks its first
// sequence and walks forward with next_valid.
template <class Spec>
WinnerSet scan_parallel(const Election& e, EnumerationBudget budget, const Spec& spec) {
  const auto total = count_valid(e);
  std::uint64_t limit = total.value_or(UINT64_MAX);
  bool truncated = false;
  if (!total || *total > budget.max_sequences) {
    if (budget.on_exceed == EnumerationBudget::OnExceed::kError) {
      throw BudgetExceeded("more than " + std::to_string(budget.max_sequences) +
                           " valid committee sequences");
    }
    limit = budget.max_sequences;
    truncated = true;
  }
  const int threads = static_cast<int>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(thread_count(), limit)));
  std::vector<detail::ScanState<Spec>> states(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads)
  {
    const auto id = static_cast<std::uint64_t>(thread_id());
    const auto n = static_cast<std::uint64_t>(threads);
    const std::uint64_t begin = limit / n * id + std::min(id, limit % n);
    const std::uint64_t end = begin + limit / n + (id < limit % n ? 1 : 0);
    auto& state = states[id];
    if (begin < end) {
      CommitteeSequence x = unrank_valid(e, begin);
      for (std::uint64_t i = begin; i < end; ++i) {
        state.offer(spec, spec.eval(e, x), x);
        if (i + 1 < end) next_valid(e, x);
      }
    }
  }

  detail::ScanState<Spec> merged;
  for (auto& s : states) merged.merge(spec, std::move(s));
  WinnerSet out;
  out.winners = std::move(merged.winners);
  out.complete = !truncated;
  std::sort(out.winners.begin(), out.winners.end());
  return out;
}

}  // namespace

WinnerSet brute_rule_parallel(const Election& e, RuleId rule, EnumerationBudget budget) {
  if (!e.has_levels()) throw InfeasibleError("election has no levels");
  switch (rule) {
    case RuleId::kEgal:
      return scan_parallel(e, budget, detail::EgalKey{});
    case RuleId::kALS:
      return scan_parallel(e, budget, detail::WeightedKey{e, WeightOrder::kALS});
    case RuleId::kASL:
      return scan_parallel(e, budget, detail::WeightedKey{e, WeightOrder::kASL});
    case RuleId::kLex:
      return scan_parallel(e, budget, detail::LexKey{});
    default:
      return brute_rule(e, rule, budget);
  }
}

}  // namespace egalseq::oracle
