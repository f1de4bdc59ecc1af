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

#include "polyname/script_filter.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <unicode/uscript.h>

#include "polyname/error.h"
#include "polyname/unicode.h"

namespace polyname {

ScriptTag ScriptTag::Common() { return ScriptTag(USCRIPT_COMMON); }

ScriptTag ScriptTag::OfCodepoint(char32_t c) {
  UErrorCode status = U_ZERO_ERROR;
  UScriptCode code = uscript_getScript(static_cast<UChar32>(c), &status);
  if (U_FAILURE(status)) return ScriptTag(USCRIPT_UNKNOWN);
  return ScriptTag(code);
}

std::optional<ScriptTag> ScriptTag::Parse(std::string_view name) {
  std::string copy(name);
  UScriptCode codes[8];
  UErrorCode status = U_ZERO_ERROR;
  int n = uscript_getCode(copy.c_str(), codes, 8, &status);
  if (U_FAILURE(status) || n != 1) return std::nullopt;
  // uscript_getCode also resolves locale names ("ru" -> Cyrillic); insist
  // on a script property value name.
  ScriptTag tag(codes[0]);
  if (tag.name() != copy && uscript_getShortName(codes[0]) != copy) return std::nullopt;
  return tag;
}

std::string ScriptTag::name() const {
  const char *n = uscript_getName(static_cast<UScriptCode>(code_));
  return n != nullptr ? n : "Unknown";
}

bool ScriptTag::excluded_from_majority() const {
  return code_ == USCRIPT_COMMON || code_ == USCRIPT_INHERITED || code_ == USCRIPT_UNKNOWN;
}

ScriptTag MajorityScript(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("majority script of an empty name");
  struct Tally {
    uint64_t count = 0;
    size_t first = 0;
  };
  std::unordered_map<int, Tally> tallies;
  size_t position = 0;
  for (char32_t c : DecodeUtf8(name)) {
    ScriptTag tag = ScriptTag::OfCodepoint(c);
    if (!tag.excluded_from_majority()) {
      auto [it, inserted] = tallies.try_emplace(tag.code(), Tally{0, position});
      ++it->second.count;
    }
    ++position;
  }
  if (tallies.empty()) return ScriptTag::Common();
  int best = 0;
  Tally best_tally{0, 0};
  for (const auto &[code, tally] : tallies) {
    if (tally.count > best_tally.count ||
        (tally.count == best_tally.count && tally.first < best_tally.first)) {
      best = code;
      best_tally = tally;
    }
  }
  return ScriptTag(best);
}

ProfileGranularity ParseProfileGranularity(std::string_view name) {
  if (name == "name") return ProfileGranularity::kName;
  if (name == "codepoint") return ProfileGranularity::kCodepoint;
  throw std::invalid_argument("unknown profile granularity: " + std::string(name));
}

void ScriptProfile::AddName(std::string_view name, ProfileGranularity granularity) {
  if (granularity == ProfileGranularity::kName) {
    Add(MajorityScript(name));
    return;
  }
  bool voted = false;
  for (char32_t c : DecodeUtf8(name)) {
    ScriptTag tag = ScriptTag::OfCodepoint(c);
    if (tag.excluded_from_majority()) continue;
    Add(tag);
    voted = true;
  }
  if (!voted) Add(ScriptTag::Common());
}

double ScriptEntropy(const ScriptProfile &profile) {
  if (profile.empty()) throw std::invalid_argument("entropy of an empty script profile");
  const double total = static_cast<double>(profile.total());
  double entropy = 0.0;
  for (const auto &[tag, count] : profile.counts()) {
    if (count == 0) continue;
    double p = static_cast<double>(count) / total;
    entropy -= p * std::log2(p);
  }
  // A single-script profile yields -1*log2(1) = -0.0.
  return entropy <= 0.0 ? 0.0 : entropy;
}

AllowedScripts AllowedScripts::Parse(std::string_view text) {
  AllowedScripts allowed;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string trimmed = TrimWhitespace(line);
    if (trimmed.empty()) continue;
    size_t tab = trimmed.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError("allowed scripts line " + std::to_string(line_number) +
                        ": expected language<TAB>scripts");
    }
    std::string language = TrimWhitespace(trimmed.substr(0, tab));
    std::stringstream scripts(trimmed.substr(tab + 1));
    std::string name;
    while (std::getline(scripts, name, ',')) {
      name = TrimWhitespace(name);
      if (name.empty()) continue;
      auto tag = ScriptTag::Parse(name);
      if (!tag) {
        throw ConfigError("allowed scripts line " + std::to_string(line_number) +
                          ": unknown script " + name);
      }
      allowed.Allow(language, *tag);
    }
    if (allowed.Find(language) == nullptr) {
      throw ConfigError("allowed scripts line " + std::to_string(line_number) +
                        ": no scripts for " + language);
    }
  }
  return allowed;
}

AllowedScripts AllowedScripts::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read allowed scripts file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

const std::set<ScriptTag> *AllowedScripts::Find(const std::string &language) const {
  auto it = allowed_.find(language);
  return it == allowed_.end() ? nullptr : &it->second;
}

bool ScriptFilter::Keep(const TypedName &name) {
  const std::set<ScriptTag> *scripts = allowed_.Find(name.language);
  if (scripts == nullptr) {
    unlisted_.insert(name.language);
    return true;
  }
  return scripts->contains(MajorityScript(name.label));
}

FilterResult FilterNames(const std::vector<TypedName> &names, const AllowedScripts &allowed) {
  ScriptFilter filter(allowed);
  FilterResult result;
  for (const TypedName &name : names) {
    (filter.Keep(name) ? result.kept : result.removed).push_back(name);
  }
  return result;
}

EntropyReport BuildEntropyReport(const std::map<std::string, ScriptProfile> &before,
                                 const std::map<std::string, ScriptProfile> &after) {
  EntropyReport report;
  for (const auto &[language, profile] : before) {
    if (profile.empty()) continue;
    EntropyRow row;
    row.language = language;
    row.before = ScriptEntropy(profile);
    row.names_before = profile.total();
    auto it = after.find(language);
    if (it == after.end() || it->second.empty()) {
      row.emptied = true;
    } else {
      row.after = ScriptEntropy(it->second);
      row.names_after = it->second.total();
    }
    report.mean_before += row.before;
    report.mean_after += row.after;
    report.rows.push_back(row);
  }
  if (!report.rows.empty()) {
    report.mean_before /= static_cast<double>(report.rows.size());
    report.mean_after /= static_cast<double>(report.rows.size());
  }
  return report;
}

static std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string EntropyReport::ToTsv(std::string_view unicode_version,
                                 ProfileGranularity granularity) const {
  std::string out;
  out += "# entropy_base=2\n";
  out += "# unicode_version=" + std::string(unicode_version) + "\n";
  out += std::string("# granularity=") +
         (granularity == ProfileGranularity::kName ? "name" : "codepoint") + "\n";
  out += "language\tentropy_before\tentropy_after\tnames_before\tnames_after\tflag\n";
  uint64_t total_before = 0, total_after = 0;
  for (const EntropyRow &row : rows) {
    out += row.language + "\t" + Fixed6(row.before) + "\t" + Fixed6(row.after) + "\t" +
           std::to_string(row.names_before) + "\t" + std::to_string(row.names_after) + "\t" +
           (row.emptied ? "emptied" : "-") + "\n";
    total_before += row.names_before;
    total_after += row.names_after;
  }
  out += "MACRO_AVG\t" + Fixed6(mean_before) + "\t" + Fixed6(mean_after) + "\t" +
         std::to_string(total_before) + "\t" + std::to_string(total_after) + "\t-\n";
  return out;
}

}  // namespace polyname
