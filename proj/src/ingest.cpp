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

#include "egalseq/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace egalseq::ingest {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

std::optional<std::size_t> parse_count(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end) return std::nullopt;
  return v;
}

[[noreturn]] void malformed(std::size_t line_no, std::string_view what) {
  throw DataError("line " + std::to_string(line_no) + ": " + std::string(what));
}

}  // namespace

RankedProfile parse_ranked(std::istream& in) {
  std::optional<std::size_t> m;
  std::map<std::size_t, std::string> names;
  std::vector<std::vector<std::size_t>> orders;  // 1-based ids until the end

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      if (starts_with_ci(body, "NUMBER ALTERNATIVES:")) {
        m = parse_count(body.substr(20));
        if (!m || *m == 0) malformed(line_no, "bad number of alternatives");
      } else if (starts_with_ci(body, "ALTERNATIVE NAME ")) {
        const std::string_view rest = body.substr(17);
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos) malformed(line_no, "bad alternative name line");
        const auto id = parse_count(rest.substr(0, colon));
        if (!id || *id == 0) malformed(line_no, "bad alternative id");
        if (!names.emplace(*id, std::string(trim(rest.substr(colon + 1)))).second) {
          malformed(line_no, "alternative named twice");
        }
      }
      continue;
    }
    if (!m) malformed(line_no, "preference line before the NUMBER ALTERNATIVES header");
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) malformed(line_no, "expected 'count: ids'");
    const auto count = parse_count(line.substr(0, colon));
    if (!count || *count == 0) malformed(line_no, "bad multiplicity");
    const std::string_view rest = trim(line.substr(colon + 1));
    if (rest.find_first_of("{}") != std::string_view::npos) {
      malformed(line_no, "ties are not supported in strict orders");
    }
    std::vector<std::size_t> order;
    std::set<std::size_t> seen;
    if (!rest.empty()) {
      std::size_t pos = 0;
      while (pos <= rest.size()) {
        const auto comma = std::min(rest.find(',', pos), rest.size());
        const auto id = parse_count(rest.substr(pos, comma - pos));
        if (!id) malformed(line_no, "bad candidate id");
        if (*id == 0 || *id > *m) {
          malformed(line_no, "unknown candidate id " + std::to_string(*id));
        }
        if (!seen.insert(*id).second) {
          malformed(line_no, "candidate " + std::to_string(*id) + " listed twice");
        }
        order.push_back(*id - 1);
        pos = comma + 1;
      }
    }
    for (std::size_t i = 0; i < *count; ++i) orders.push_back(order);
  }
  if (!m) throw DataError("missing NUMBER ALTERNATIVES header");
  if (orders.empty()) throw DataError("empty profile");
  for (const auto& [id, name] : names) {
    if (id > *m) throw DataError("alternative name for unknown id " + std::to_string(id));
  }

  RankedProfile profile;
  std::set<std::string> distinct;
  bool use_names = names.size() == *m;
  for (const auto& [id, name] : names) {
    if (name.empty() || !distinct.insert(name).second) use_names = false;
  }
  for (std::size_t i = 1; i <= *m; ++i) {
    profile.candidates.push_back(use_names ? names.at(i) : std::to_string(i));
  }
  profile.orders = std::move(orders);
  return profile;
}

RankedProfile parse_ranked(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_ranked(in);
}

RankedProfile read_ranked(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  try {
    return parse_ranked(in);
  } catch (const DataError& err) {
    throw DataError(path.string() + ": " + err.what());
  }
}

LabelMap parse_labels(const nlohmann::json& doc, const RankedProfile& profile) {
  if (!doc.is_object() || !doc.contains("levels") || !doc.contains("labels")) {
    throw DataError("label document needs 'levels' and 'labels'");
  }
  const auto& levels = doc.at("levels");
  const auto& labels = doc.at("labels");
  if (!levels.is_array() || levels.empty()) throw DataError("'levels' must be a nonempty list");
  if (!labels.is_object()) throw DataError("'labels' must map candidates to level lists");

  LabelMap out;
  std::unordered_map<std::string, std::size_t> level_index;
  for (const auto& l : levels) {
    if (!l.is_string()) throw DataError("level names must be strings");
    const auto name = l.get<std::string>();
    if (!level_index.emplace(name, out.levels.size()).second) {
      throw DataError("duplicate level '" + name + "'");
    }
    out.levels.push_back(name);
  }

  std::unordered_map<std::string, std::size_t> cand_index;
  for (std::size_t c = 0; c < profile.candidates.size(); ++c) {
    cand_index.emplace(profile.candidates[c], c);
  }
  for (std::size_t c = 0; c < profile.candidates.size(); ++c) {
    cand_index.emplace(std::to_string(c + 1), c);
  }

  out.candidate_levels.assign(profile.candidates.size(), {});
  for (const auto& [key, value] : labels.items()) {
    const auto it = cand_index.find(key);
    if (it == cand_index.end()) throw DataError("label for unknown candidate '" + key + "'");
    if (!value.is_array() || value.empty()) {
      throw DataError("candidate '" + key + "' needs a nonempty level list");
    }
    auto& dst = out.candidate_levels[it->second];
    if (!dst.empty()) throw DataError("candidate '" + key + "' labelled twice");
    for (const auto& l : value) {
      if (!l.is_string()) throw DataError("level names must be strings");
      const auto lit = level_index.find(l.get<std::string>());
      if (lit == level_index.end()) {
        throw DataError("candidate '" + key + "' names unknown level '" + l.get<std::string>() + "'");
      }
      dst.push_back(lit->second);
    }
    std::sort(dst.begin(), dst.end());
    dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
  }

  std::vector<bool> used(out.levels.size(), false);
  for (const auto& ls : out.candidate_levels) {
    for (std::size_t t : ls) used[t] = true;
  }
  for (std::size_t t = 0; t < used.size(); ++t) {
    if (!used[t]) throw DataError("level '" + out.levels[t] + "' has no candidates");
  }
  return out;
}

LabelMap read_labels(const std::filesystem::path& path, const RankedProfile& profile) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw DataError(path.string() + ": " + err.what());
  }
  return parse_labels(doc, profile);
}

std::string_view class_name(InstanceClass c) {
  switch (c) {
    case InstanceClass::kApproval1: return "approval1";
    case InstanceClass::kApproval2: return "approval2";
    case InstanceClass::kPoint: return "point";
  }
  return "?";
}

InstanceClass parse_class(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (auto c : {InstanceClass::kApproval1, InstanceClass::kApproval2, InstanceClass::kPoint}) {
    if (lower == class_name(c)) return c;
  }
  throw DataError("unknown instance class '" + std::string(name) + "'");
}

Election build_election(const RankedProfile& profile, const LabelMap& labels,
                        InstanceClass cls, std::string source) {
  const std::size_t m = profile.candidates.size();
  const std::size_t n = profile.orders.size();
  if (n == 0) throw DataError("empty profile");
  if (labels.candidate_levels.size() != m) {
    throw DataError("label map does not match the profile's candidates");
  }

  std::vector<Level> levels(labels.levels.size());
  // Column of each profile candidate on each of its levels.
  std::vector<std::vector<std::size_t>> column(levels.size(), std::vector<std::size_t>(m, m));
  for (std::size_t t = 0; t < levels.size(); ++t) levels[t].name = labels.levels[t];
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t t : labels.candidate_levels[c]) {
      if (t >= levels.size()) throw DataError("label references an unknown level");
      column[t][c] = levels[t].candidates.size();
      levels[t].candidates.push_back(profile.candidates[c]);
    }
  }
  for (std::size_t t = 0; t < levels.size(); ++t) {
    if (levels[t].candidates.empty()) {
      throw DataError("level '" + levels[t].name + "' has no candidates");
    }
    levels[t].k = 1;
    levels[t].utility.assign(n * levels[t].candidates.size(), 0);
  }

  std::vector<std::string> agents;
  for (std::size_t a = 0; a < n; ++a) {
    agents.push_back("a" + std::to_string(a + 1));
    const auto& order = profile.orders[a];
    for (std::size_t t = 0; t < levels.size(); ++t) {
      // (position in the whole order, column) of the level's ranked candidates
      std::vector<std::pair<std::size_t, std::size_t>> present;
      for (std::size_t p = 0; p < order.size(); ++p) {
        const std::size_t col = column[t][order[p]];
        if (col != m) present.emplace_back(p, col);
      }
      const std::size_t width = levels[t].candidates.size();
      Utility* row = levels[t].utility.data() + a * width;
      switch (cls) {
        case InstanceClass::kApproval1:
          if (!present.empty()) row[present[0].second] = 1;
          break;
        case InstanceClass::kApproval2:
          for (std::size_t i = 0; i < present.size() && i < 2; ++i) row[present[i].second] = 1;
          break;
        case InstanceClass::kPoint:
          if (present.size() == 1) {
            row[present[0].second] = 10;
          } else if (present.size() >= 2) {
            const Utility b1 = m - present[0].first;
            const Utility b2 = m - present[1].first;
            // round(10 * b1 / (b1 + b2)) with halves going up
            const Utility u1 = (20 * b1 + (b1 + b2)) / (2 * (b1 + b2));
            row[present[0].second] = u1;
            row[present[1].second] = 10 - u1;
          }
          break;
      }
    }
  }
  ElectionMeta meta{std::move(source), std::string(class_name(cls)), "", {}};
  return Election(std::move(agents), std::move(levels), std::move(meta));
}

CleanupResult cleanup(const Election& e, InstanceClass cls) {
  const std::size_t n = e.num_agents();
  ElectionMeta meta = e.meta();
  std::vector<Level> kept;
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    const Level& lv = e.level(t);
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < lv.candidates.size(); ++c) {
      if (e.column_sum(t, c) > 0) cols.push_back(c);
    }
    if (cols.empty()) continue;

    Level out;
    out.name = lv.name;
    for (std::size_t c : cols) out.candidates.push_back(lv.candidates[c]);
    out.utility.reserve(n * cols.size());
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c : cols) out.utility.push_back(e.utility(t, a, c));
    }
    bool unanimous = true;
    for (std::size_t a = 1; a < n && unanimous; ++a) {
      unanimous = std::equal(out.utility.begin(), out.utility.begin() + cols.size(),
                             out.utility.begin() + a * cols.size());
    }
    if (unanimous) continue;

    out.k = lv.k;
    if (out.k > out.candidates.size()) {
      out.k = out.candidates.size();
      meta.notes.push_back("level '" + lv.name + "': k clamped from " + std::to_string(lv.k) +
                           " to " + std::to_string(out.k));
    }
    kept.push_back(std::move(out));
  }

  Election cleaned(e.agents(), std::move(kept), std::move(meta));
  const std::size_t m = cleaned.total_candidates();
  if (cleaned.num_levels() <= 1) return Rejection{"at most one level"};
  if (m <= 3) return Rejection{"at most three candidates"};
  if (cls == InstanceClass::kPoint) {
    if (n > 80) return Rejection{"more than 80 agents"};
    if (m > 80) return Rejection{"more than 80 candidates"};
  } else if (m > 160) {
    return Rejection{"more than 160 candidates"};
  }
  return cleaned;
}

Election kappa_rule(const Election& e, std::size_t l) {
  std::vector<std::size_t> sizes;
  for (std::size_t t = 0; t < e.num_levels(); ++t) {
    const std::size_t c = e.num_candidates(t);
    sizes.push_back(std::max<std::size_t>(std::min(l, c == 0 ? 0 : c - 1), 1));
  }
  ElectionMeta meta = e.meta();
  meta.kappa_rule = "kappa" + std::to_string(l);
  return e.with_committee_sizes(std::move(sizes)).with_meta(std::move(meta));
}

CleanupResult ingest_files(const std::filesystem::path& profile_path,
                           const std::filesystem::path& labels_path, InstanceClass cls,
                           std::size_t kappa_l) {
  const RankedProfile profile = read_ranked(profile_path);
  const LabelMap labels = read_labels(labels_path, profile);
  auto result = cleanup(build_election(profile, labels, cls, profile_path.filename().string()), cls);
  if (auto* e = std::get_if<Election>(&result)) return kappa_rule(*e, kappa_l);
  return result;
}

}  // namespace egalseq::ingest
