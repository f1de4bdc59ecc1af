// Copyright 2026 The Polyname Authors
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

#ifndef POLYNAME_EMIT_H_
#define POLYNAME_EMIT_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "polyname/typed_name.h"

namespace polyname {

struct ResourceRow {
  Qid qid;
  std::string eng;  // empty when the entity has no English label
  std::string label;
  std::string language;
  EntityTypeSet types;
};

inline constexpr const char *kResourceHeader = "wikidata_id\teng\tlabel\tlanguage\ttype\n";

// Replaces tabs, carriage returns and newlines with single spaces. Returns
// true if anything changed.
bool SanitizeField(std::string &field);

std::string ResourceLine(const ResourceRow &row);

// Languages with exactly one name.
std::set<std::string> SingletonLanguages(const std::map<std::string, uint64_t> &counts);

// Removes every row of a language that has only one row.
std::vector<TypedName> DropSingletonLanguages(const std::vector<TypedName> &names,
                                              std::set<std::string> *dropped = nullptr);

struct EmitSummary {
  uint64_t total_names = 0;
  uint64_t entities = 0;
  uint64_t language_codes = 0;
  uint64_t higher_level_languages = 0;
  std::map<std::string, uint64_t> names_per_type;  // rows per per-type file
  std::set<std::string> dropped_languages;
  uint64_t sanitized_fields = 0;

  std::string ToJson() const;
};

// Visits every input row; called twice by EmitResource.
using NameSource = std::function<void(const std::function<void(const TypedName &)> &)>;

// Writes combined_names.tsv and loc_names.tsv / org_names.tsv /
// per_names.tsv plus summary.json under `dir`. Rows are sorted by numeric
// qid then language code. Multi-type entities appear in every matching
// per-type file and once in the combined file.
EmitSummary EmitResource(const NameSource &source, const std::filesystem::path &dir);
EmitSummary EmitResource(const std::vector<TypedName> &names, const std::filesystem::path &dir);

}  // namespace polyname

#endif  // POLYNAME_EMIT_H_
