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

#ifndef POLYNAME_SCRIPT_FILTER_H_
#define POLYNAME_SCRIPT_FILTER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyname/typed_name.h"

namespace polyname {

// A Unicode Script property value (ICU UScriptCode).
class ScriptTag {
 public:
  constexpr explicit ScriptTag(int code) : code_(code) {}

  static ScriptTag Common();
  static ScriptTag OfCodepoint(char32_t c);
  // Accepts long ("Cyrillic") or short ("Cyrl") property value names.
  static std::optional<ScriptTag> Parse(std::string_view name);

  int code() const { return code_; }
  // Long property value name, e.g. "Latin".
  std::string name() const;
  // Common, Inherited and Unknown do not vote for a majority.
  bool excluded_from_majority() const;

  auto operator<=>(const ScriptTag &) const = default;

 private:
  int code_;
};

// Most frequent script among the codepoints, ignoring Common, Inherited and
// Unknown. Ties go to the script that occurs first. Returns Common if no
// codepoint votes. Throws std::invalid_argument on an empty name.
ScriptTag MajorityScript(std::string_view name);

enum class ProfileGranularity { kName, kCodepoint };

ProfileGranularity ParseProfileGranularity(std::string_view name);

class ScriptProfile {
 public:
  void Add(ScriptTag tag, uint64_t count = 1) { counts_[tag] += count; total_ += count; }
  // Adds one majority tag for the name, or one tag per voting codepoint.
  void AddName(std::string_view name, ProfileGranularity granularity);

  const std::map<ScriptTag, uint64_t> &counts() const { return counts_; }
  uint64_t total() const { return total_; }
  bool empty() const { return total_ == 0; }

 private:
  std::map<ScriptTag, uint64_t> counts_;
  uint64_t total_ = 0;
};

// Shannon entropy in bits. Throws std::invalid_argument on an empty profile.
double ScriptEntropy(const ScriptProfile &profile);

// Scripts allowed per Wikimedia language code.
class AllowedScripts {
 public:
  void Allow(const std::string &language, ScriptTag tag) { allowed_[language].insert(tag); }

  // TSV: language<TAB>comma-separated script names; '#' starts a comment.
  // Throws ConfigError on unknown script names.
  static AllowedScripts Load(const std::filesystem::path &path);
  static AllowedScripts Parse(std::string_view text);

  // nullptr if the language has no entry.
  const std::set<ScriptTag> *Find(const std::string &language) const;
  size_t size() const { return allowed_.size(); }

 private:
  std::map<std::string, std::set<ScriptTag>> allowed_;
};

// Keeps a name iff its majority script is allowed for its language, or the
// language has no entry (reported once through unlisted_languages()).
class ScriptFilter {
 public:
  explicit ScriptFilter(const AllowedScripts &allowed) : allowed_(allowed) {}

  bool Keep(const TypedName &name);

  const std::set<std::string> &unlisted_languages() const { return unlisted_; }

 private:
  const AllowedScripts &allowed_;
  std::set<std::string> unlisted_;
};

struct FilterResult {
  std::vector<TypedName> kept;
  std::vector<TypedName> removed;
};

FilterResult FilterNames(const std::vector<TypedName> &names, const AllowedScripts &allowed);

struct EntropyRow {
  std::string language;
  double before = 0.0;
  double after = 0.0;
  uint64_t names_before = 0;
  uint64_t names_after = 0;
  bool emptied = false;  // every name was filtered out
};

struct EntropyReport {
  std::vector<EntropyRow> rows;  // ascending language code
  double mean_before = 0.0;
  double mean_after = 0.0;

  // Header comments, column header, one row per language, MACRO_AVG row.
  std::string ToTsv(std::string_view unicode_version, ProfileGranularity granularity) const;
};

// Unweighted means over languages with a nonempty before-profile.
EntropyReport BuildEntropyReport(const std::map<std::string, ScriptProfile> &before,
                                 const std::map<std::string, ScriptProfile> &after);

}  // namespace polyname

#endif  // POLYNAME_SCRIPT_FILTER_H_
