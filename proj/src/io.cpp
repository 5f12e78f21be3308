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

#include "egalseq/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace egalseq::io {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json election_to_json(const Election& e) {
  ordered_json doc;
  doc["agents"] = e.agents();
  ordered_json levels = ordered_json::array();
  for (const Level& lv : e.levels()) {
    ordered_json l;
    if (!lv.name.empty()) l["name"] = lv.name;
    l["candidates"] = lv.candidates;
    l["k"] = lv.k;
    ordered_json rows = ordered_json::array();
    const std::size_t m = lv.candidates.size();
    for (std::size_t a = 0; a < e.num_agents(); ++a) {
      rows.push_back(std::vector<Utility>(lv.utility.begin() + static_cast<std::ptrdiff_t>(a * m),
                                          lv.utility.begin() + static_cast<std::ptrdiff_t>((a + 1) * m)));
    }
    l["utilities"] = std::move(rows);
    levels.push_back(std::move(l));
  }
  doc["levels"] = std::move(levels);
  ordered_json meta;
  meta["source"] = e.meta().source;
  meta["class"] = e.meta().instance_class;
  meta["kappa_rule"] = e.meta().kappa_rule;
  if (!e.meta().notes.empty()) meta["notes"] = e.meta().notes;
  doc["meta"] = std::move(meta);
  return doc;
}

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw DataError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw DataError(where + ": expected a list of names");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw DataError(where + ": names must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Utility nonnegative(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    throw DataError(where + ": utilities must be nonnegative integers");
  }
  if (v.is_number_unsigned()) return v.get<Utility>();
  const auto s = v.get<std::int64_t>();
  if (s < 0) throw DataError(where + ": negative utility");
  return static_cast<Utility>(s);
}

}  // namespace

Election election_from_json(const json& doc) {
  if (!doc.is_object()) throw DataError("election document must be an object");
  auto agents = string_list(require(doc, "agents", "election"), "agents");
  const json& jlevels = require(doc, "levels", "election");
  if (!jlevels.is_array()) throw DataError("levels must be a list");
  std::vector<Level> levels;
  for (std::size_t t = 0; t < jlevels.size(); ++t) {
    const std::string where = "level " + std::to_string(t + 1);
    const json& jl = jlevels[t];
    Level lv;
    if (jl.contains("name")) {
      if (!jl["name"].is_string()) throw DataError(where + ": name must be a string");
      lv.name = jl["name"].get<std::string>();
    }
    lv.candidates = string_list(require(jl, "candidates", where), where);
    const json& jk = require(jl, "k", where);
    if (!jk.is_number_integer() || jk.get<std::int64_t>() < 0) {
      throw DataError(where + ": k must be a nonnegative integer");
    }
    lv.k = jk.get<std::size_t>();
    const json& rows = require(jl, "utilities", where);
    if (!rows.is_array() || rows.size() != agents.size()) {
      throw DataError(where + ": utilities need one row per agent");
    }
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != lv.candidates.size()) {
        throw DataError(where + ": utility row length must equal the candidate count");
      }
      for (const auto& v : row) lv.utility.push_back(nonnegative(v, where));
    }
    levels.push_back(std::move(lv));
  }
  ElectionMeta meta;
  if (doc.contains("meta")) {
    const json& jm = doc["meta"];
    if (!jm.is_object()) throw DataError("meta must be an object");
    auto str = [&](const char* key) -> std::string {
      if (!jm.contains(key) || jm[key].is_null()) return {};
      if (!jm[key].is_string()) throw DataError(std::string("meta.") + key + " must be a string");
      return jm[key].get<std::string>();
    };
    meta.source = str("source");
    meta.instance_class = str("class");
    meta.kappa_rule = str("kappa_rule");
    if (jm.contains("notes")) meta.notes = string_list(jm["notes"], "meta.notes");
  }
  return Election(std::move(agents), std::move(levels), std::move(meta));
}

std::string dump_election(const Election& e) {
  return election_to_json(e).dump(2) + "\n";
}

Election parse_election(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw DataError(std::string("malformed election document: ") + err.what());
  }
  return election_from_json(doc);
}

Election read_election(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_election(buf.str());
  } catch (const DataError& err) {
    throw DataError(path.string() + ": " + err.what());
  }
}

void write_election(const Election& e, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << dump_election(e);
}

ordered_json sequence_to_json(const Election& e, const CommitteeSequence& x) {
  return ordered_json(sequence_to_ids(e, x));
}

CommitteeSequence sequence_from_json(const Election& e, const json& doc) {
  if (!doc.is_array()) throw DataError("committee sequence must be a list");
  std::vector<std::vector<std::string>> ids;
  for (const auto& level : doc) ids.push_back(string_list(level, "committee"));
  return sequence_from_ids(e, ids);
}

std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw DataError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return files;
}

}  // namespace egalseq::io
