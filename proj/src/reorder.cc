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

#include "polyname/reorder.h"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "polyname/error.h"
#include "polyname/unicode.h"

namespace polyname {

void RomanizationTable::Add(std::string_view source, std::string replacement) {
  std::u32string key = DecodeUtf8(source);
  if (key.empty()) throw ConfigError("romanization source must not be empty");
  max_source_length_ = std::max(max_source_length_, key.size());
  entries_[std::move(key)] = std::move(replacement);
}

RomanizationTable RomanizationTable::Parse(std::string_view text) {
  RomanizationTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ConfigError("romanization table line " + std::to_string(line_number) +
                        ": expected source<TAB>replacement");
    }
    table.Add(line.substr(0, tab), line.substr(tab + 1));
  }
  return table;
}

RomanizationTable RomanizationTable::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read romanization table " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

void RomanizationTable::Merge(const RomanizationTable &other) {
  for (const auto &[source, replacement] : other.entries_) entries_[source] = replacement;
  max_source_length_ = std::max(max_source_length_, other.max_source_length_);
}

std::string RomanizationTable::Apply(std::string_view text) const {
  std::u32string input = DecodeUtf8(text);
  std::string out;
  out.reserve(text.size());
  std::u32string key;
  size_t i = 0;
  while (i < input.size()) {
    size_t longest = std::min(max_source_length_, input.size() - i);
    bool matched = false;
    for (size_t len = longest; len > 0; --len) {
      key.assign(input, i, len);
      auto it = entries_.find(key);
      if (it != entries_.end()) {
        out += it->second;
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      out += EncodeUtf8(std::u32string_view(&input[i], 1));
      ++i;
    }
  }
  return out;
}

std::string Romanizer::Romanize(std::string_view text) const {
  return RomanizeBatch({std::string(text)}).front();
}

std::vector<std::string> TableRomanizer::RomanizeBatch(
    const std::vector<std::string> &texts) const {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const auto &text : texts) out.push_back(table_.Apply(text));
  return out;
}

std::vector<std::string> ExternalRomanizer::RomanizeBatch(
    const std::vector<std::string> &texts) const {
  if (texts.empty()) return {};
  char path[] = "/tmp/polyname-romanize-XXXXXX";
  int fd = mkstemp(path);
  if (fd < 0) throw IoError("cannot create temporary file for external romanizer");
  close(fd);
  {
    std::ofstream input(path, std::ios::binary);
    for (const auto &text : texts) input << text << '\n';
    if (!input) {
      std::remove(path);
      throw IoError("cannot write external romanizer input");
    }
  }
  std::string command = "(" + command_ + "\n) < '" + path + "'";
  FILE *pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    std::remove(path);
    throw Error("cannot start external romanizer: " + command_);
  }
  std::string output;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, n);
  int status = pclose(pipe);
  std::remove(path);
  if (status != 0) {
    throw Error("external romanizer exited with status " + std::to_string(status) + ": " +
                command_);
  }
  std::vector<std::string> lines;
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (lines.size() != texts.size()) {
    throw Error("external romanizer returned " + std::to_string(lines.size()) +
                " lines for " + std::to_string(texts.size()) + " inputs");
  }
  return lines;
}

std::string Romanize(std::string_view text, const RomanizationTable &table) {
  return table.Apply(text);
}

int EditDistance(std::u32string_view a, std::u32string_view b, int substitution_cost) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<int> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    int diagonal = row[0];
    row[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      int above = row[j];
      int replace = diagonal + (a[i - 1] == b[j - 1] ? 0 : substitution_cost);
      row[j] = std::min({above + 1, row[j - 1] + 1, replace});
      diagonal = above;
    }
  }
  return row[b.size()];
}

int EditDistance(std::string_view a, std::string_view b, int substitution_cost) {
  return EditDistance(DecodeUtf8(a), DecodeUtf8(b), substitution_cost);
}

std::vector<std::string> ReorderTokens(std::string_view label) {
  static const std::u32string kCommas = U",，";
  std::vector<std::string> tokens;
  for (const std::string &raw : SplitWhitespace(label)) {
    std::u32string token = DecodeUtf8(raw);
    size_t begin = 0, end = token.size();
    while (begin < end && kCommas.find(token[begin]) != std::u32string::npos) ++begin;
    while (end > begin && kCommas.find(token[end - 1]) != std::u32string::npos) --end;
    if (begin < end) tokens.push_back(EncodeUtf8(std::u32string_view(token).substr(begin, end - begin)));
  }
  return tokens;
}

namespace {

std::u32string JoinPermuted(const std::vector<std::u32string> &parts,
                            const std::vector<size_t> &order) {
  std::u32string out;
  for (size_t k = 0; k < order.size(); ++k) {
    if (k > 0) out.push_back(U' ');
    out += parts[order[k]];
  }
  return out;
}

}  // namespace

ReorderDecision ReorderWithRomanized(std::string_view label, const std::vector<std::string> &tokens,
                                     const std::vector<std::string> &romanized,
                                     std::string_view english, const ReorderOptions &options) {
  ReorderDecision decision;
  decision.original = std::string(label);
  decision.chosen = decision.original;

  std::vector<std::u32string> parts;
  parts.reserve(romanized.size());
  for (const auto &r : romanized) parts.push_back(DecodeUtf8(r));
  std::vector<size_t> order(tokens.size());
  std::iota(order.begin(), order.end(), 0);
  const std::u32string reference = DecodeUtf8(english);

  decision.original_distance =
      EditDistance(JoinPermuted(parts, order), reference, options.substitution_cost);
  decision.chosen_distance = decision.original_distance;
  if (tokens.size() <= 1) return decision;
  if (static_cast<int>(tokens.size()) > options.max_tokens) {
    decision.too_many_tokens = true;
    return decision;
  }

  std::vector<size_t> best = order;
  while (std::next_permutation(order.begin(), order.end())) {
    int distance = EditDistance(JoinPermuted(parts, order), reference, options.substitution_cost);
    if (distance < decision.chosen_distance) {
      decision.chosen_distance = distance;
      best = order;
    }
  }
  if (!std::is_sorted(best.begin(), best.end())) {
    std::string chosen;
    for (size_t k = 0; k < best.size(); ++k) {
      if (k > 0) chosen += ' ';
      chosen += tokens[best[k]];
    }
    decision.chosen = std::move(chosen);
  }
  decision.reordered = decision.chosen != decision.original;
  return decision;
}

ReorderDecision ReorderName(std::string_view label, std::string_view english,
                            const Romanizer &romanizer, const ReorderOptions &options) {
  std::vector<std::string> tokens = ReorderTokens(label);
  std::vector<std::string> romanized = romanizer.RomanizeBatch(tokens);
  return ReorderWithRomanized(label, tokens, romanized, english, options);
}

void CorpusReorderer::Process(std::vector<TypedName> &rows, std::vector<LoggedDecision> *log) {
  struct Job {
    size_t row;
    size_t english_row;
    std::vector<std::string> tokens;
    ReorderDecision decision;
  };
  std::vector<Job> jobs;
  std::vector<std::string> unique_tokens;
  std::unordered_map<std::string, size_t> token_ids;

  stats_.names += rows.size();
  size_t begin = 0;
  while (begin < rows.size()) {
    size_t end = begin;
    while (end < rows.size() && rows[end].qid == rows[begin].qid) ++end;
    std::optional<size_t> english;
    for (size_t i = begin; i < end; ++i) {
      if (rows[i].language == "en") english = i;
    }
    for (size_t i = begin; i < end; ++i) {
      if (!rows[i].types.Contains(EntityType::kPer) || rows[i].language == "en") continue;
      if (!english) {
        ++stats_.missing_english;
        continue;
      }
      Job job{i, *english, ReorderTokens(rows[i].label), {}};
      for (const auto &token : job.tokens) {
        if (token_ids.emplace(token, unique_tokens.size()).second) unique_tokens.push_back(token);
      }
      jobs.push_back(std::move(job));
    }
    begin = end;
  }

  std::vector<std::string> romanized = romanizer_.RomanizeBatch(unique_tokens);
  auto work = [&](size_t worker) {
    for (size_t k = worker; k < jobs.size(); k += workers_) {
      Job &job = jobs[k];
      std::vector<std::string> parts;
      parts.reserve(job.tokens.size());
      for (const auto &token : job.tokens) parts.push_back(romanized[token_ids.at(token)]);
      job.decision = ReorderWithRomanized(rows[job.row].label, job.tokens, parts,
                                          rows[job.english_row].label, options_);
    }
  };
  if (workers_ == 1 || jobs.size() < 2) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (int w = 1; w < workers_; ++w) threads.emplace_back(work, w);
    work(0);
  }

  for (Job &job : jobs) {
    ++stats_.considered;
    if (job.decision.too_many_tokens) ++stats_.too_many_tokens;
    if (job.decision.reordered) {
      ++stats_.reordered;
      rows[job.row].label = job.decision.chosen;
    }
    if (log != nullptr) {
      log->push_back({rows[job.row].qid, rows[job.row].language, std::move(job.decision)});
    }
  }
}

std::string DecisionLogHeader() {
  return "# commas stripped before permutation\n"
         "qid\tlanguage\toriginal\tchosen\toriginal_distance\tchosen_distance\treordered\n";
}

static std::string NoTabs(std::string text) {
  std::replace(text.begin(), text.end(), '\t', ' ');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

std::string DecisionLogLine(const LoggedDecision &entry) {
  const ReorderDecision &d = entry.decision;
  return entry.qid.str() + "\t" + entry.language + "\t" + NoTabs(d.original) + "\t" +
         NoTabs(d.chosen) + "\t" + std::to_string(d.original_distance) + "\t" +
         std::to_string(d.chosen_distance) + "\t" + (d.reordered ? "1" : "0") + "\n";
}

}  // namespace polyname
