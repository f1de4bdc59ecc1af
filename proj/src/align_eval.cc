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

#include "polyname/align_eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "polyname/error.h"
#include "polyname/unicode.h"

namespace polyname {

AlignmentGraph::AlignmentGraph(std::initializer_list<std::pair<int, int>> edges) {
  for (auto [s, t] : edges) AddEdge(s, t);
}

uint64_t CrossingCount(const AlignmentGraph &graph) {
  // Edges iterate by (source, target). Two edges cross exactly when the
  // later one has a strictly smaller target, so the answer is the number
  // of strict inversions in the target sequence. Equal sources never
  // contribute because their targets ascend.
  std::vector<int> targets;
  targets.reserve(graph.edges().size());
  for (const auto &edge : graph.edges()) targets.push_back(edge.second);
  std::vector<int> ranks = targets;
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());

  // Fenwick tree over target ranks counting targets seen so far.
  std::vector<uint64_t> tree(ranks.size() + 1, 0);
  uint64_t crossings = 0;
  uint64_t seen = 0;
  for (int target : targets) {
    size_t rank = std::lower_bound(ranks.begin(), ranks.end(), target) - ranks.begin() + 1;
    uint64_t at_most = 0;
    for (size_t i = rank; i > 0; i -= i & (~i + 1)) at_most += tree[i];
    crossings += seen - at_most;
    for (size_t i = rank; i < tree.size(); i += i & (~i + 1)) ++tree[i];
    ++seen;
  }
  return crossings;
}

bool ParseAlignmentLine(std::string_view line, AlignmentGraph &graph) {
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) {
    size_t dash = token.find('-');
    if (dash == std::string::npos) return false;
    int source = 0, target = 0;
    const char *begin = token.data();
    const char *end = token.data() + token.size();
    auto r1 = std::from_chars(begin, begin + dash, source);
    auto r2 = std::from_chars(begin + dash + 1, end, target);
    if (r1.ec != std::errc() || r1.ptr != begin + dash || r2.ec != std::errc() ||
        r2.ptr != end || source < 0 || target < 0) {
      return false;
    }
    graph.AddEdge(source, target);
  }
  return true;
}

std::vector<AlignmentGraph> ParseAlignments(std::istream &in, AlignmentParseStats *stats) {
  std::vector<AlignmentGraph> graphs;
  AlignmentParseStats local;
  std::string line;
  while (std::getline(in, line)) {
    ++local.lines;
    AlignmentGraph graph;
    if (!ParseAlignmentLine(line, graph)) {
      ++local.malformed;
      graph = AlignmentGraph();
    }
    graphs.push_back(std::move(graph));
  }
  if (stats != nullptr) *stats = local;
  return graphs;
}

std::map<std::string, LanguageMca> MeanCrossingAlignments(
    const std::vector<std::string> &languages, const std::vector<AlignmentGraph> &graphs) {
  if (languages.size() != graphs.size()) {
    throw std::invalid_argument("language list and alignments differ in length");
  }
  std::map<std::string, LanguageMca> all;
  std::map<std::string, uint64_t> crossings;
  for (size_t i = 0; i < graphs.size(); ++i) {
    LanguageMca &entry = all[languages[i]];
    if (graphs[i].empty()) {
      ++entry.unaligned;
      continue;
    }
    ++entry.names;
    crossings[languages[i]] += CrossingCount(graphs[i]);
  }
  std::map<std::string, LanguageMca> out;
  for (auto &[language, entry] : all) {
    if (entry.names == 0) continue;
    entry.mca = static_cast<double>(crossings[language]) / static_cast<double>(entry.names);
    out.emplace(language, entry);
  }
  return out;
}

static std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string McaReportTsv(const std::map<std::string, LanguageMca> &mca) {
  std::string out = "language\tname_count\tmca\n";
  for (const auto &[language, entry] : mca) {
    out += language + "\t" + std::to_string(entry.names) + "\t" + Fixed(entry.mca, 6) + "\n";
  }
  return out;
}

std::vector<HistogramBin> McaHistogram(const std::map<std::string, LanguageMca> &mca,
                                       double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("histogram bin width must be positive");
  if (mca.empty()) return {};
  double highest = 0.0;
  for (const auto &[language, entry] : mca) highest = std::max(highest, entry.mca);
  size_t bins = static_cast<size_t>(std::floor(highest / bin_width)) + 1;
  std::vector<HistogramBin> out(bins);
  for (size_t b = 0; b < bins; ++b) {
    out[b].low = static_cast<double>(b) * bin_width;
    out[b].high = static_cast<double>(b + 1) * bin_width;
  }
  for (const auto &[language, entry] : mca) {
    size_t b = std::min(bins - 1, static_cast<size_t>(std::floor(entry.mca / bin_width)));
    ++out[b].languages;
  }
  return out;
}

std::string HistogramTsv(const std::vector<HistogramBin> &bins) {
  std::string out = "bin_low\tbin_high\tlanguage_count\n";
  for (const auto &bin : bins) {
    out += Fixed(bin.low, 4) + "\t" + Fixed(bin.high, 4) + "\t" + std::to_string(bin.languages) +
           "\n";
  }
  return out;
}

size_t LcsLength(std::u32string_view a, std::u32string_view b) {
  std::vector<size_t> row(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diagonal = 0;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t above = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diagonal + 1 : std::max(above, row[j - 1]);
      diagonal = above;
    }
  }
  return row[b.size()];
}

double LcsF1(std::string_view hypothesis, std::string_view reference) {
  if (reference.empty()) throw std::invalid_argument("LCS F1 needs a nonempty reference");
  std::u32string hyp = DecodeUtf8(hypothesis);
  std::u32string ref = DecodeUtf8(reference);
  if (hyp.empty()) return 0.0;
  size_t lcs = LcsLength(hyp, ref);
  if (lcs == 0) return 0.0;
  double precision = static_cast<double>(lcs) / static_cast<double>(hyp.size());
  double recall = static_cast<double>(lcs) / static_cast<double>(ref.size());
  return 2.0 * precision * recall / (precision + recall);
}

std::vector<GoldExample> ParseGold(std::string_view text) {
  std::vector<GoldExample> gold;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    auto fail = [&](const std::string &why) {
      return ParseError("gold line " + std::to_string(line_number) + ": " + why);
    };
    if (fields.size() != 4 && fields.size() != 5) throw fail("expected 4 or 5 tab-separated fields");
    if (fields[3] != "0" && fields[3] != "1") throw fail("needs_reordering must be 0 or 1");
    GoldExample example{fields[0], fields[1], fields[2], fields[3] == "1",
                        fields.size() == 5 ? fields[4] : std::string()};
    if (example.needs_reordering != (example.input != example.gold)) {
      throw fail("needs_reordering disagrees with input/gold");
    }
    gold.push_back(std::move(example));
  }
  return gold;
}

std::vector<GoldExample> LoadGold(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read gold file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGold(buffer.str());
}

ReorderingScores EvaluateReordering(const std::vector<std::string> &outputs,
                                    const std::vector<GoldExample> &gold) {
  if (outputs.size() != gold.size()) {
    throw std::invalid_argument("got " + std::to_string(outputs.size()) + " outputs for " +
                                std::to_string(gold.size()) + " gold examples");
  }
  ReorderingScores scores;
  scores.examples = gold.size();
  if (gold.empty()) return scores;
  uint64_t exact = 0, true_pos = 0, false_pos = 0, false_neg = 0;
  double f1_sum = 0.0;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (outputs[i] == gold[i].gold) ++exact;
    f1_sum += LcsF1(outputs[i], gold[i].gold);
    bool predicted = outputs[i] != gold[i].input;
    if (predicted && gold[i].needs_reordering) ++true_pos;
    if (predicted && !gold[i].needs_reordering) ++false_pos;
    if (!predicted && gold[i].needs_reordering) ++false_neg;
  }
  const double n = static_cast<double>(gold.size());
  scores.accuracy = 100.0 * static_cast<double>(exact) / n;
  scores.mean_f1 = 100.0 * f1_sum / n;
  if (true_pos + false_pos > 0) {
    scores.precision = 100.0 * static_cast<double>(true_pos) / (true_pos + false_pos);
  }
  if (true_pos + false_neg > 0) {
    scores.recall = 100.0 * static_cast<double>(true_pos) / (true_pos + false_neg);
  }
  return scores;
}

std::string FormatPercent(double value) { return Fixed(value, 1); }

}  // namespace polyname
