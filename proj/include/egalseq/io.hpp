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

// Canonical election documents:
//
//   {
//     "agents": ["a1", ...],
//     "levels": [
//       {"name": "lunch", "candidates": ["c1", ...], "k": 1,
//        "utilities": [[u(a1,c1), ...], ...]},
//       ...
//     ],
//     "meta": {"source": "...", "class": "...", "kappa_rule": "..."}
//   }
//
// "name" and "meta.notes" are optional; everything else is required.

#ifndef EGALSEQ_IO_HPP_
#define EGALSEQ_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "egalseq/model.hpp"

namespace egalseq::io {

nlohmann::ordered_json election_to_json(const Election& e);
Election election_from_json(const nlohmann::json& doc);

std::string dump_election(const Election& e);
Election parse_election(const std::string& text);

Election read_election(const std::filesystem::path& path);
void write_election(const Election& e, const std::filesystem::path& path);

// Committee sequence as nested candidate-id lists.
nlohmann::ordered_json sequence_to_json(const Election& e,
                                        const CommitteeSequence& x);
CommitteeSequence sequence_from_json(const Election& e,
                                     const nlohmann::json& doc);

// Canonical-election files (*.json) in a directory, sorted by file name.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir);

}  // namespace egalseq::io

#endif  // EGALSEQ_IO_HPP_
