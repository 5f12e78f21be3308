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

// Ranked preference data to multilevel elections.
//
// Profiles use the PrefLib strict-order layout:
//
//   # NUMBER ALTERNATIVES: 4
//   # ALTERNATIVE NAME 1: Pasta
//   ...
//   3: 1,2,4
//   1: 3
//
// Other '#' lines are ignored. Labels come from a sidecar document:
//
//   {"levels": ["starter", "main"],
//    "labels": {"Pasta": ["main"], "Soup": ["starter", "main"]}}
//
// where a candidate may be named by its alternative name or its numeric id.

#ifndef EGALSEQ_INGEST_HPP_
#define EGALSEQ_INGEST_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "egalseq/model.hpp"

namespace egalseq::ingest {

struct RankedProfile {
  // Candidate ids in file order; alternative names when they are present and
  // distinct, otherwise the numeric ids.
  std::vector<std::string> candidates;
  // One strict, possibly incomplete order per agent, most preferred first,
  // as indices into `candidates`.
  std::vector<std::vector<std::size_t>> orders;
};

RankedProfile parse_ranked(std::istream& in);
RankedProfile parse_ranked(std::string_view text);
RankedProfile read_ranked(const std::filesystem::path& path);

struct LabelMap {
  std::vector<std::string> levels;
  // Per profile candidate, the indices of its levels (possibly none).
  std::vector<std::vector<std::size_t>> candidate_levels;
};

// Throws DataError on unknown candidates or levels, an empty label list, or
// a level without candidates.
LabelMap parse_labels(const nlohmann::json& doc, const RankedProfile& profile);
LabelMap read_labels(const std::filesystem::path& path, const RankedProfile& profile);

enum class InstanceClass { kApproval1, kApproval2, kPoint };

std::string_view class_name(InstanceClass c);
InstanceClass parse_class(std::string_view name);

// Per level, agents score the candidates of that level they ranked:
//   kApproval2: 1 for the two most preferred (all of them if fewer),
//   kApproval1: 1 for the most preferred,
//   kPoint: 10 points split between the top two by Borda score
//           b = m - position, rounded half up; 10 for a sole candidate.
// Committee sizes start at 1; use kappa_rule to set them.
Election build_election(const RankedProfile& profile, const LabelMap& labels,
                        InstanceClass cls, std::string source = {});

struct Rejection {
  std::string reason;
};

using CleanupResult = std::variant<Election, Rejection>;

// Drops candidates nobody supports, then levels on which every agent has the
// same utility vector, clamps k_t to |C_t| (noted in meta), and rejects
// elections with at most one level or at most three candidates, approval
// elections with more than 160 candidates, and point elections with more than
// 80 agents or candidates. Idempotent.
CleanupResult cleanup(const Election& e, InstanceClass cls);

// k_t = max(min(l, |C_t| - 1), 1) on every level.
Election kappa_rule(const Election& e, std::size_t l);

// parse, label, build, clean up and size committees in one go.
CleanupResult ingest_files(const std::filesystem::path& profile_path,
                           const std::filesystem::path& labels_path, InstanceClass cls,
                           std::size_t kappa_l);

}  // namespace egalseq::ingest

#endif  // EGALSEQ_INGEST_HPP_
