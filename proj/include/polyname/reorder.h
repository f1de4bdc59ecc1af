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

#ifndef POLYNAME_REORDER_H_
#define POLYNAME_REORDER_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polyname/typed_name.h"

namespace polyname {

// Character-sequence to Latin replacement map applied longest match first.
class RomanizationTable {
 public:
  // Later entries for the same source replace earlier ones.
  void Add(std::string_view source, std::string replacement);

  // TSV: source<TAB>replacement, '#' comment lines. An empty replacement
  // deletes the source (e.g. soft signs). Throws ConfigError.
  static RomanizationTable Load(const std::filesystem::path &path);
  static RomanizationTable Parse(std::string_view text);
  void Merge(const RomanizationTable &other);

  // Greedy left-to-right, longest source first; unmapped characters are
  // copied unchanged.
  std::string Apply(std::string_view text) const;

  size_t size() const { return entries_.size(); }
  const std::unordered_map<std::u32string, std::string> &entries() const { return entries_; }

 private:
  std::unordered_map<std::u32string, std::string> entries_;
  size_t max_source_length_ = 0;
};

class Romanizer {
 public:
  virtual ~Romanizer() = default;
  // One output per input, same order.
  virtual std::vector<std::string> RomanizeBatch(const std::vector<std::string> &texts) const = 0;
  std::string Romanize(std::string_view text) const;
};

class TableRomanizer : public Romanizer {
 public:
  explicit TableRomanizer(RomanizationTable table) : table_(std::move(table)) {}
  std::vector<std::string> RomanizeBatch(const std::vector<std::string> &texts) const override;
  const RomanizationTable &table() const { return table_; }

 private:
  RomanizationTable table_;
};

// Runs a shell command that maps stdin lines to stdout lines one to one.
// A nonzero exit status or a line count mismatch throws Error.
class ExternalRomanizer : public Romanizer {
 public:
  explicit ExternalRomanizer(std::string command) : command_(std::move(command)) {}
  std::vector<std::string> RomanizeBatch(const std::vector<std::string> &texts) const override;

 private:
  std::string command_;
};

std::string Romanize(std::string_view text, const RomanizationTable &table);

// Edit distance over code points with unit insertion and deletion cost.
// The default substitution cost of 2 makes a substitution no cheaper than
// a deletion plus an insertion.
int EditDistance(std::string_view a, std::string_view b, int substitution_cost = 2);
int EditDistance(std::u32string_view a, std::u32string_view b, int substitution_cost = 2);

struct ReorderOptions {
  int max_tokens = 6;
  int substitution_cost = 2;
};

struct ReorderDecision {
  std::string original;
  std::string chosen;
  bool reordered = false;
  bool too_many_tokens = false;
  int original_distance = 0;
  int chosen_distance = 0;
};

// Label tokens: whitespace split with commas stripped from token edges.
std::vector<std::string> ReorderTokens(std::string_view label);

// Chooses the token order whose romanization is closest to `english`.
// Ties keep the original order, then the first permutation in
// lexicographic index order. A label whose original order wins is
// returned byte-for-byte; otherwise tokens are joined by single spaces.
ReorderDecision ReorderName(std::string_view label, std::string_view english,
                            const Romanizer &romanizer, const ReorderOptions &options = {});

// Same decision given the tokens' romanizations.
ReorderDecision ReorderWithRomanized(std::string_view label, const std::vector<std::string> &tokens,
                                     const std::vector<std::string> &romanized,
                                     std::string_view english, const ReorderOptions &options);

struct ReorderStats {
  uint64_t names = 0;            // all rows seen
  uint64_t considered = 0;       // non-English PER rows with an English label
  uint64_t reordered = 0;
  uint64_t missing_english = 0;  // PER rows whose entity has no English label
  uint64_t too_many_tokens = 0;

  double reordered_fraction() const {
    return considered == 0 ? 0.0 : static_cast<double>(reordered) / considered;
  }
};

struct LoggedDecision {
  Qid qid;
  std::string language;
  ReorderDecision decision;
};

// Reorders PER names entity by entity. Input rows of one entity must be
// contiguous; the English row supplies the reference and is left as is.
class CorpusReorderer {
 public:
  CorpusReorderer(const Romanizer &romanizer, ReorderOptions options, int workers = 1)
      : romanizer_(romanizer), options_(options), workers_(std::max(1, workers)) {}

  // Rewrites labels in place and appends one decision per considered row.
  void Process(std::vector<TypedName> &rows, std::vector<LoggedDecision> *log = nullptr);

  const ReorderStats &stats() const { return stats_; }

 private:
  const Romanizer &romanizer_;
  ReorderOptions options_;
  int workers_;
  ReorderStats stats_;
};

// Header and rows of the decisions log TSV.
std::string DecisionLogHeader();
std::string DecisionLogLine(const LoggedDecision &entry);

}  // namespace polyname

#endif  // POLYNAME_REORDER_H_
