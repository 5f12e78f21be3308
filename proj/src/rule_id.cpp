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

#include "egalseq/rule_id.hpp"

#include <algorithm>
#include <cctype>

namespace egalseq {

std::string_view rule_name(RuleId rule) {
  switch (rule) {
    case RuleId::kSum: return "sum";
    case RuleId::kGreedy: return "greedy";
    case RuleId::kEgal: return "egal";
    case RuleId::kALS: return "als";
    case RuleId::kASL: return "asl";
    case RuleId::kLex: return "lex";
  }
  return "?";
}

RuleId parse_rule(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (RuleId r : kAllRules) {
    if (rule_name(r) == lower) return r;
  }
  throw DataError("unknown rule: " + std::string(name));
}

bool WinnerSet::contains(const CommitteeSequence& x) const {
  return std::binary_search(winners.begin(), winners.end(), x);
}

}  // namespace egalseq
