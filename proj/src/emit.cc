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

#include "polyname/emit.h"

#include <algorithm>
#include <memory>
#include <optional>

#include "json.hpp"
#include "polyname/file_util.h"

namespace polyname {

namespace fs = std::filesystem;

bool SanitizeField(std::string &field) {
  bool changed = false;
  for (char &c : field) {
    if (c == '\t' || c == '\n' || c == '\r') {
      c = ' ';
      changed = true;
    }
  }
  return changed;
}

std::string ResourceLine(const ResourceRow &row) {
  return row.qid.str() + "\t" + row.eng + "\t" + row.label + "\t" + row.language + "\t" +
         row.types.JoinedName() + "\n";
}

std::set<std::string> SingletonLanguages(const std::map<std::string, uint64_t> &counts) {
  std::set<std::string> out;
  for (const auto &[language, count] : counts) {
    if (count == 1) out.insert(language);
  }
  return out;
}

std::vector<TypedName> DropSingletonLanguages(const std::vector<TypedName> &names,
                                              std::set<std::string> *dropped) {
  std::map<std::string, uint64_t> counts;
  for (const auto &name : names) ++counts[name.language];
  std::set<std::string> singletons = SingletonLanguages(counts);
  std::vector<TypedName> out;
  for (const auto &name : names) {
    if (!singletons.contains(name.language)) out.push_back(name);
  }
  if (dropped != nullptr) *dropped = std::move(singletons);
  return out;
}

std::string EmitSummary::ToJson() const {
  nlohmann::json j;
  j["total_names"] = total_names;
  j["entities"] = entities;
  j["language_codes"] = language_codes;
  j["higher_level_languages"] = higher_level_languages;
  j["names_per_type"] = names_per_type;
  j["dropped_singleton_languages"] = dropped_languages;
  j["sanitized_fields"] = sanitized_fields;
  return j.dump(2) + "\n";
}

namespace {

bool RowLess(const TypedName &a, const TypedName &b) {
  if (a.qid != b.qid) return a.qid < b.qid;
  return a.language < b.language;
}

class ResourceWriter {
 public:
  ResourceWriter(const fs::path &dir, const std::set<std::string> &dropped, EmitSummary &summary)
      : dropped_(dropped), summary_(summary), combined_(dir / "combined_names.tsv") {
    combined_.Write(kResourceHeader);
    for (EntityType t : kAllEntityTypes) {
      std::string name(EntityTypeName(t));
      std::transform(name.begin(), name.end(), name.begin(), ::tolower);
      auto &file = per_type_.emplace_back(std::make_unique<AtomicFile>(dir / (name + "_names.tsv")));
      file->Write(kResourceHeader);
      summary_.names_per_type[std::string(EntityTypeName(t))] = 0;
    }
  }

  // Rows of one entity, in language order.
  void WriteEntity(const std::vector<TypedName> &rows) {
    std::string eng;
    for (const auto &row : rows) {
      if (row.language == "en") eng = row.label;
    }
    if (SanitizeField(eng)) ++summary_.sanitized_fields;
    bool any = false;
    for (const auto &name : rows) {
      if (dropped_.contains(name.language)) continue;
      ResourceRow row{name.qid, eng, name.label, name.language, name.types};
      if (SanitizeField(row.label)) ++summary_.sanitized_fields;
      std::string line = ResourceLine(row);
      combined_.Write(line);
      for (EntityType t : kAllEntityTypes) {
        if (!row.types.Contains(t)) continue;
        per_type_[static_cast<int>(t)]->Write(line);
        ++summary_.names_per_type[std::string(EntityTypeName(t))];
      }
      ++summary_.total_names;
      languages_.insert(row.language);
      any = true;
    }
    if (any) ++summary_.entities;
  }

  void Commit() {
    combined_.Commit();
    for (auto &file : per_type_) file->Commit();
    summary_.language_codes = languages_.size();
    std::set<std::string> higher;
    for (const auto &code : languages_) higher.insert(code.substr(0, 2));
    summary_.higher_level_languages = higher.size();
  }

 private:
  const std::set<std::string> &dropped_;
  EmitSummary &summary_;
  AtomicFile combined_;
  std::vector<std::unique_ptr<AtomicFile>> per_type_;
  std::set<std::string> languages_;
};

}  // namespace

EmitSummary EmitResource(const NameSource &source, const fs::path &dir) {
  fs::create_directories(dir);
  std::map<std::string, uint64_t> counts;
  bool sorted = true;
  std::optional<TypedName> previous;
  source([&](const TypedName &name) {
    ++counts[name.language];
    if (previous && !RowLess(*previous, name)) sorted = false;
    previous = name;
  });

  EmitSummary summary;
  summary.dropped_languages = SingletonLanguages(counts);
  ResourceWriter writer(dir, summary.dropped_languages, summary);

  std::vector<TypedName> group;
  auto flush = [&] {
    if (!group.empty()) writer.WriteEntity(group);
    group.clear();
  };
  auto visit = [&](const TypedName &name) {
    if (!group.empty() && group.front().qid != name.qid) flush();
    group.push_back(name);
  };
  if (sorted) {
    source(visit);
  } else {
    std::vector<TypedName> all;
    source([&](const TypedName &name) { all.push_back(name); });
    std::stable_sort(all.begin(), all.end(), RowLess);
    for (const auto &name : all) visit(name);
  }
  flush();
  writer.Commit();
  WriteFileAtomically(dir / "summary.json", summary.ToJson());
  return summary;
}

EmitSummary EmitResource(const std::vector<TypedName> &names, const fs::path &dir) {
  return EmitResource(
      [&](const std::function<void(const TypedName &)> &fn) {
        for (const auto &name : names) fn(name);
      },
      dir);
}

}  // namespace polyname
