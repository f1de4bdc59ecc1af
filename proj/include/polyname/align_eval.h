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

#ifndef POLYNAME_ALIGN_EVAL_H_
#define POLYNAME_ALIGN_EVAL_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polyname {

// Token alignment between a label (source) and its English label (target).
class AlignmentGraph {
 public:
  AlignmentGraph() = default;
  AlignmentGraph(std::initializer_list<std::pair<int, int>> edges);

  void AddEdge(int source, int target) { edges_.emplace(source, target); }
  const std::set<std::pair<int, int>> &edges() const { return edges_; }
  bool empty() const { return edges_.empty(); }

  bool operator==(const AlignmentGraph &) const = default;

 private:
  std::set<std::pair<int, int>> edges_;
};

// Unordered edge pairs (i,j),(k,l) with (i-k)*(j-l) < 0.
uint64_t CrossingCount(const AlignmentGraph &graph);

struct AlignmentParseStats {
  uint64_t lines = 0;
  uint64_t malformed = 0;
};

// Parses one line of "i-j" pairs. Returns false on a malformed token.
bool ParseAlignmentLine(std::string_view line, AlignmentGraph &graph);

// One graph per input line; malformed lines yield an empty graph so the
// output stays aligned with the bitext, and are counted.
std::vector<AlignmentGraph> ParseAlignments(std::istream &in, AlignmentParseStats *stats = nullptr);

struct LanguageMca {
  uint64_t names = 0;      // names with a nonempty alignment
  uint64_t unaligned = 0;  // names whose alignment was empty
  double mca = 0.0;
};

// Mean crossing count per language over names with nonempty alignments.
// Languages with no aligned name are omitted.
std::map<std::string, LanguageMca> MeanCrossingAlignments(
    const std::vector<std::string> &languages, const std::vector<AlignmentGraph> &graphs);

std::string McaReportTsv(const std::map<std::string, LanguageMca> &mca);

struct HistogramBin {
  double low = 0.0;
  double high = 0.0;
  uint64_t languages = 0;
};

// Fixed-width bins from 0 covering the largest MCA; [low, high).
std::vector<HistogramBin> McaHistogram(const std::map<std::string, LanguageMca> &mca,
                                       double bin_width);
std::string HistogramTsv(const std::vector<HistogramBin> &bins);

// Character-level LCS length over code points.
size_t LcsLength(std::u32string_view a, std::u32string_view b);

// F1 of LCS-based precision and recall. Throws std::invalid_argument on
// an empty reference.
double LcsF1(std::string_view hypothesis, std::string_view reference);

struct GoldExample {
  std::string language;
  std::string input;
  std::string gold;
  bool needs_reordering = false;
  std::string english;  // reference for the reorderer; may be empty
};

// TSV: language<TAB>input<TAB>gold<TAB>needs_reordering(0/1)[<TAB>english],
// '#' comments.
// Throws ParseError, including when the flag disagrees with input != gold.
std::vector<GoldExample> LoadGold(const std::filesystem::path &path);
std::vector<GoldExample> ParseGold(std::string_view text);

struct ReorderingScores {
  double accuracy = 0.0;   // percent
  double mean_f1 = 0.0;    // percent
  double precision = 0.0;  // percent, positive class = needs reordering
  double recall = 0.0;     // percent
  uint64_t examples = 0;
};

// Predicted positive: output differs from input. Throws
// std::invalid_argument if the counts differ.
ReorderingScores EvaluateReordering(const std::vector<std::string> &outputs,
                                    const std::vector<GoldExample> &gold);

// One decimal, as used in the results table.
std::string FormatPercent(double value);

}  // namespace polyname

#endif  // POLYNAME_ALIGN_EVAL_H_
