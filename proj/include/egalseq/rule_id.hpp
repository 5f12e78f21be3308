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

#ifndef EGALSEQ_RULE_ID_HPP_
#define EGALSEQ_RULE_ID_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "egalseq/model.hpp"

namespace egalseq {

enum class RuleId { kSum, kGreedy, kEgal, kALS, kASL, kLex };

inline constexpr std::array<RuleId, 6> kAllRules = {
    RuleId::kSum, RuleId::kGreedy, RuleId::kEgal,
    RuleId::kALS, RuleId::kASL,    RuleId::kLex};

// The five rules compared in experiments (EGAL is the baseline).
inline constexpr std::array<RuleId, 5> kStudiedRules = {
    RuleId::kLex, RuleId::kASL, RuleId::kALS, RuleId::kGreedy, RuleId::kSum};

std::string_view rule_name(RuleId rule);
// Accepts the names printed by rule_name, case-insensitively.
RuleId parse_rule(std::string_view name);

// Canonically sorted winners; complete is false when enumeration stopped at
// a cap or budget before the set was exhausted.
struct WinnerSet {
  std::vector<CommitteeSequence> winners;
  bool complete = true;

  bool contains(const CommitteeSequence& x) const;
};

}  // namespace egalseq

#endif  // EGALSEQ_RULE_ID_HPP_
