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

#ifndef POLYNAME_PIPELINE_H_
#define POLYNAME_PIPELINE_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyname/config.h"

namespace polyname {

enum class Stage {
  kIngest,
  kBuildStore,
  kTypeInfer,
  kClean,
  kFilterScripts,
  kReorder,
  kEmit,
  kEvaluate,
  kStats,
};

std::string_view StageName(Stage stage);
std::optional<Stage> ParseStage(std::string_view name);

// ingest, build-store, typeinfer, clean, filter-scripts, reorder, emit.
const std::vector<Stage> &CanonicalStageOrder();

// Artifact names inside the work directory.
namespace artifacts {
inline constexpr const char *kEntities = "entities.jsonl";
inline constexpr const char *kStore = "store";
inline constexpr const char *kTyped = "typed.jsonl";
inline constexpr const char *kCensus = "census.tsv";
inline constexpr const char *kCleaned = "cleaned.jsonl";
inline constexpr const char *kFiltered = "filtered.jsonl";
inline constexpr const char *kRemoved = "removed.jsonl";
inline constexpr const char *kEntropy = "entropy.tsv";
inline constexpr const char *kReordered = "reordered.jsonl";
inline constexpr const char *kDecisions = "reorder_decisions.tsv";
inline constexpr const char *kResource = "resource";
inline constexpr const char *kEvaluation = "eval.tsv";
inline constexpr const char *kBitext = "bitext.txt";
inline constexpr const char *kBitextLanguages = "bitext_languages.txt";
inline constexpr const char *kMca = "mca.tsv";
inline constexpr const char *kMcaHistogram = "mca_histogram.tsv";
inline constexpr const char *kStats = "stats.json";
inline constexpr const char *kManifest = "manifest.jsonl";
}  // namespace artifacts

struct StageReport {
  Stage stage;
  std::map<std::string, uint64_t> counters;
  std::map<std::string, double> metrics;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
};

// Runs stages against one work directory. Progress goes to `log`; data
// goes to files (and to `out` for `stats`).
class Pipeline {
 public:
  Pipeline(PipelineConfig config, std::ostream &log, std::ostream &out);

  // Runs one stage, appends its manifest line and returns its report.
  // Throws MissingArtifactError, ConfigError or other Errors.
  StageReport Run(Stage stage);
  // Runs the canonical stage order.
  std::vector<StageReport> RunAll();

  std::filesystem::path Artifact(const char *name) const { return config_.work_dir / name; }
  const PipelineConfig &config() const { return config_; }

 private:
  StageReport Ingest();
  StageReport BuildStore();
  StageReport TypeInfer();
  StageReport Clean();
  StageReport FilterScripts();
  StageReport Reorder();
  StageReport Emit();
  StageReport Evaluate();
  StageReport Stats();

  std::filesystem::path Require(Stage stage, const std::filesystem::path &path) const;
  void AppendManifest(const StageReport &report, const std::string &started_at,
                      double wall_seconds);
  void LogCounters(const StageReport &report);

  PipelineConfig config_;
  std::ostream &log_;
  std::ostream &out_;
};

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitMissingArtifact = 2;
inline constexpr int kExitRuntime = 3;

// Runs a subcommand ("all" or a stage name), mapping errors to exit codes.
int RunSubcommand(std::string_view name, const PipelineConfig &config, std::ostream &log,
                  std::ostream &out);

}  // namespace polyname

#endif  // POLYNAME_PIPELINE_H_
