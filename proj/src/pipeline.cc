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

#include "polyname/pipeline.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>

#include "json.hpp"
#include "polyname/align_eval.h"
#include "polyname/dump_ingest.h"
#include "polyname/emit.h"
#include "polyname/entity_store.h"
#include "polyname/error.h"
#include "polyname/file_util.h"
#include "polyname/name_cleanup.h"
#include "polyname/reorder.h"
#include "polyname/script_filter.h"
#include "polyname/typed_name.h"
#include "polyname/unicode.h"

namespace polyname {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct StageInfo {
  Stage stage;
  const char *name;
};

constexpr StageInfo kStages[] = {
    {Stage::kIngest, "ingest"},         {Stage::kBuildStore, "build-store"},
    {Stage::kTypeInfer, "typeinfer"},   {Stage::kClean, "clean"},
    {Stage::kFilterScripts, "filter-scripts"}, {Stage::kReorder, "reorder"},
    {Stage::kEmit, "emit"},             {Stage::kEvaluate, "evaluate"},
    {Stage::kStats, "stats"},
};

std::string UtcTimestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ifstream OpenStageFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

// Visits typed names of a stage file.
template <typename Fn>
void ForEachTypedName(const fs::path &path, Fn &&fn) {
  std::ifstream in = OpenStageFile(path);
  TypedNameReader reader(in);
  while (auto name = reader.Next()) fn(*name);
}

std::unique_ptr<Romanizer> MakeRomanizer(const PipelineConfig &config) {
  if (!config.external_romanizer.empty()) {
    return std::make_unique<ExternalRomanizer>(config.external_romanizer);
  }
  RomanizationTable table;
  for (const auto &path : config.romanization_tables) table.Merge(RomanizationTable::Load(path));
  return std::make_unique<TableRomanizer>(std::move(table));
}

void HashInto(json &out, const fs::path &path, const fs::path &base) {
  auto key = [&](const fs::path &p) {
    fs::path rel = p.lexically_relative(base);
    return (rel.empty() || rel.string().rfind("..", 0) == 0 ? p : rel).string();
  };
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto &entry : fs::recursive_directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto &file : files) out[key(file)] = Sha256File(file);
  } else if (fs::is_regular_file(path)) {
    out[key(path)] = Sha256File(path);
  }
}

}  // namespace

std::string_view StageName(Stage stage) {
  for (const auto &info : kStages) {
    if (info.stage == stage) return info.name;
  }
  return "";
}

std::optional<Stage> ParseStage(std::string_view name) {
  for (const auto &info : kStages) {
    if (name == info.name) return info.stage;
  }
  return std::nullopt;
}

const std::vector<Stage> &CanonicalStageOrder() {
  static const std::vector<Stage> order = {Stage::kIngest,        Stage::kBuildStore,
                                           Stage::kTypeInfer,     Stage::kClean,
                                           Stage::kFilterScripts, Stage::kReorder,
                                           Stage::kEmit};
  return order;
}

Pipeline::Pipeline(PipelineConfig config, std::ostream &log, std::ostream &out)
    : config_(std::move(config)), log_(log), out_(out) {}

fs::path Pipeline::Require(Stage stage, const fs::path &path) const {
  if (!fs::exists(path)) {
    throw MissingArtifactError(std::string(StageName(stage)),
                               std::string(StageName(stage)) + ": missing upstream artifact " +
                                   path.string());
  }
  return path;
}

StageReport Pipeline::Run(Stage stage) {
  fs::create_directories(config_.work_dir);
  std::string started_at = UtcTimestamp();
  auto start = std::chrono::steady_clock::now();
  log_ << "[" << StageName(stage) << "] start\n";
  StageReport report;
  switch (stage) {
    case Stage::kIngest: report = Ingest(); break;
    case Stage::kBuildStore: report = BuildStore(); break;
    case Stage::kTypeInfer: report = TypeInfer(); break;
    case Stage::kClean: report = Clean(); break;
    case Stage::kFilterScripts: report = FilterScripts(); break;
    case Stage::kReorder: report = Reorder(); break;
    case Stage::kEmit: report = Emit(); break;
    case Stage::kEvaluate: report = Evaluate(); break;
    case Stage::kStats: report = Stats(); break;
  }
  report.stage = stage;
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  LogCounters(report);
  AppendManifest(report, started_at, wall);
  return report;
}

std::vector<StageReport> Pipeline::RunAll() {
  std::vector<StageReport> reports;
  for (Stage stage : CanonicalStageOrder()) reports.push_back(Run(stage));
  return reports;
}

void Pipeline::LogCounters(const StageReport &report) {
  for (const auto &[name, value] : report.counters) {
    log_ << "[" << StageName(report.stage) << "] " << name << "=" << value << "\n";
  }
  for (const auto &[name, value] : report.metrics) {
    log_ << "[" << StageName(report.stage) << "] " << name << "=" << value << "\n";
  }
}

void Pipeline::AppendManifest(const StageReport &report, const std::string &started_at,
                              double wall_seconds) {
  json line;
  line["stage"] = StageName(report.stage);
  line["started_at"] = started_at;
  line["wall_seconds"] = wall_seconds;
  line["config"] = config_.echo;
  line["counters"] = report.counters;
  line["metrics"] = report.metrics;
  line["inputs"] = json::object();
  line["outputs"] = json::object();
  for (const auto &path : report.inputs) HashInto(line["inputs"], path, config_.work_dir);
  for (const auto &path : report.outputs) HashInto(line["outputs"], path, config_.work_dir);
  std::ofstream manifest(Artifact(artifacts::kManifest), std::ios::app | std::ios::binary);
  manifest << line.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  if (!manifest) throw IoError("cannot append to manifest");
}

StageReport Pipeline::Ingest() {
  if (config_.dump.empty()) {
    throw MissingArtifactError("ingest", "ingest: no dump configured (paths.dump)");
  }
  fs::path dump = Require(Stage::kIngest, config_.dump);
  auto input = OpenInput(dump.string());
  DumpReader reader(*input, config_.format, config_.workers);
  AtomicFile out(Artifact(artifacts::kEntities));
  while (auto record = reader.Next()) out.Write(ToCanonicalJson(*record) + "\n");
  out.Commit();

  const IngestCounters &c = reader.counters();
  StageReport report;
  report.counters = {{"lines", c.lines},
                     {"records", c.records},
                     {"skipped_malformed", c.skipped_malformed},
                     {"skipped_missing_id", c.skipped_missing_id},
                     {"skipped_non_item", c.skipped_non_item},
                     {"dropped_labels", c.dropped_labels},
                     {"labels_with_control_chars", c.labels_with_control_chars}};
  report.inputs = {dump};
  report.outputs = {Artifact(artifacts::kEntities)};
  return report;
}

StageReport Pipeline::BuildStore() {
  fs::path entities = Require(Stage::kBuildStore, Artifact(artifacts::kEntities));
  fs::path store_dir = Artifact(artifacts::kStore);
  fs::path temp_dir = store_dir;
  temp_dir += ".tmp";
  fs::remove_all(temp_dir);

  std::ifstream in = OpenStageFile(entities);
  DumpReader reader(in, DumpFormat::kJsonl, config_.workers);
  StoreBuildStats stats;
  {
    StoreBuilder builder(temp_dir);
    while (auto record = reader.Next()) builder.Add(*record);
    builder.Finish();
    stats = builder.stats();
  }
  if (reader.counters().skipped_malformed > 0) {
    throw ParseError("build-store: malformed line in " + entities.string());
  }
  fs::remove_all(store_dir);
  fs::rename(temp_dir, store_dir);

  StageReport report;
  report.counters = {{"records_in", stats.records_in},
                     {"duplicates", stats.duplicates},
                     {"stored", stats.stored},
                     {"class_edges", stats.class_edges}};
  report.inputs = {entities};
  report.outputs = {store_dir};
  return report;
}

StageReport Pipeline::TypeInfer() {
  fs::path store_dir = Require(Stage::kTypeInfer, Artifact(artifacts::kStore));
  auto store = FileStore::Open(store_dir);
  TypeClosures closures = TypeClosures::Compute(store->class_graph(), config_.roots);

  TypeCensus census;
  uint64_t entities = 0, untyped = 0, names = 0;
  AtomicFile out(Artifact(artifacts::kTyped));
  store->ForEach([&](const EntityRecord &record) {
    ++entities;
    auto types = Classify(record, closures);
    if (!types) {
      ++untyped;
      return;
    }
    census.Add(*types);
    EntityTypeSet emitted = *types;
    if (config_.mode == TypeMode::kDisambiguate) emitted = EntityTypeSet{Disambiguate(*types)};
    for (const auto &[language, label] : record.labels) {
      out.Write(ToJsonLine(TypedName{record.qid, language, label, emitted}) + "\n");
      ++names;
    }
  });
  out.Commit();
  WriteFileAtomically(Artifact(artifacts::kCensus), census.ToTsv());

  StageReport report;
  report.counters = {{"entities", entities},
                     {"typed_entities", census.total()},
                     {"untyped_entities", untyped},
                     {"names", names},
                     {"closure_per", closures.per.size()},
                     {"closure_loc", closures.loc.size()},
                     {"closure_org", closures.org.size()}};
  report.inputs = {store_dir};
  report.outputs = {Artifact(artifacts::kTyped), Artifact(artifacts::kCensus)};
  return report;
}

StageReport Pipeline::Clean() {
  fs::path typed = Require(Stage::kClean, Artifact(artifacts::kTyped));
  CleanupDiagnostics diagnostics;
  uint64_t names = 0, changed = 0, dropped = 0;
  AtomicFile out(Artifact(artifacts::kCleaned));
  ForEachTypedName(typed, [&](TypedName name) {
    ++names;
    std::string cleaned = StripParentheticals(name.label, &diagnostics);
    if (cleaned.empty()) {
      ++dropped;
      return;
    }
    if (cleaned != name.label) ++changed;
    name.label = std::move(cleaned);
    out.Write(ToJsonLine(name) + "\n");
  });
  out.Commit();

  StageReport report;
  report.counters = {{"names", names},
                     {"changed", changed},
                     {"dropped_empty", dropped},
                     {"unbalanced_parentheses", diagnostics.unbalanced}};
  report.inputs = {typed};
  report.outputs = {Artifact(artifacts::kCleaned)};
  return report;
}

StageReport Pipeline::FilterScripts() {
  fs::path cleaned = Require(Stage::kFilterScripts, Artifact(artifacts::kCleaned));
  AllowedScripts allowed = AllowedScripts::Load(config_.allowed_scripts);
  ScriptFilter filter(allowed);
  std::map<std::string, ScriptProfile> before, after;
  uint64_t kept = 0, removed = 0;
  AtomicFile kept_out(Artifact(artifacts::kFiltered));
  AtomicFile removed_out(Artifact(artifacts::kRemoved));
  ForEachTypedName(cleaned, [&](const TypedName &name) {
    before[name.language].AddName(name.label, config_.granularity);
    if (filter.Keep(name)) {
      after[name.language].AddName(name.label, config_.granularity);
      kept_out.Write(ToJsonLine(name) + "\n");
      ++kept;
    } else {
      removed_out.Write(ToJsonLine(name) + "\n");
      ++removed;
    }
  });
  kept_out.Commit();
  removed_out.Commit();
  for (const auto &language : filter.unlisted_languages()) {
    log_ << "[filter-scripts] warning: no allowed scripts for '" << language
         << "', passed through unfiltered\n";
  }
  EntropyReport entropy = BuildEntropyReport(before, after);
  WriteFileAtomically(Artifact(artifacts::kEntropy),
                      entropy.ToTsv(config_.unicode_version, config_.granularity));

  StageReport report;
  report.counters = {{"kept", kept},
                     {"removed", removed},
                     {"unlisted_languages", filter.unlisted_languages().size()}};
  report.metrics = {{"mean_entropy_before", entropy.mean_before},
                    {"mean_entropy_after", entropy.mean_after}};
  report.inputs = {cleaned, config_.allowed_scripts};
  report.outputs = {Artifact(artifacts::kFiltered), Artifact(artifacts::kRemoved),
                    Artifact(artifacts::kEntropy)};
  return report;
}

StageReport Pipeline::Reorder() {
  fs::path input = config_.reorder_input.empty() ? Artifact(artifacts::kFiltered)
                                                 : config_.reorder_input;
  Require(Stage::kReorder, input);
  auto romanizer = MakeRomanizer(config_);
  CorpusReorderer reorderer(*romanizer,
                            ReorderOptions{config_.max_tokens, config_.substitution_cost},
                            config_.workers);

  // Read the whole input before renaming over it, so the stage can be
  // re-run on its own output.
  AtomicFile out(Artifact(artifacts::kReordered));
  AtomicFile decisions(Artifact(artifacts::kDecisions));
  decisions.Write(DecisionLogHeader());
  constexpr size_t kBatchRows = 4096;
  std::vector<TypedName> batch;
  std::vector<LoggedDecision> log;
  auto flush = [&] {
    reorderer.Process(batch, &log);
    for (const auto &row : batch) out.Write(ToJsonLine(row) + "\n");
    for (const auto &entry : log) decisions.Write(DecisionLogLine(entry));
    batch.clear();
    log.clear();
  };
  ForEachTypedName(input, [&](const TypedName &name) {
    if (batch.size() >= kBatchRows && batch.back().qid != name.qid) flush();
    batch.push_back(name);
  });
  flush();
  out.Commit();
  decisions.Commit();

  const ReorderStats &s = reorderer.stats();
  StageReport report;
  report.counters = {{"names", s.names},
                     {"considered", s.considered},
                     {"reordered", s.reordered},
                     {"missing_english", s.missing_english},
                     {"too_many_tokens", s.too_many_tokens}};
  report.metrics = {{"reordered_fraction", s.reordered_fraction()}};
  report.inputs = {input};
  for (const auto &table : config_.romanization_tables) report.inputs.push_back(table);
  report.outputs = {Artifact(artifacts::kReordered), Artifact(artifacts::kDecisions)};
  return report;
}

StageReport Pipeline::Emit() {
  fs::path input = Require(Stage::kEmit, Artifact(artifacts::kReordered));
  fs::path dir = Artifact(artifacts::kResource);
  EmitSummary summary = EmitResource(
      [&](const std::function<void(const TypedName &)> &fn) { ForEachTypedName(input, fn); },
      dir);

  StageReport report;
  report.counters = {{"total_names", summary.total_names},
                     {"entities", summary.entities},
                     {"language_codes", summary.language_codes},
                     {"higher_level_languages", summary.higher_level_languages},
                     {"dropped_singleton_languages", summary.dropped_languages.size()},
                     {"sanitized_fields", summary.sanitized_fields}};
  report.inputs = {input};
  report.outputs = {dir};
  return report;
}

StageReport Pipeline::Evaluate() {
  StageReport report;
  if (!config_.gold.empty()) {
    std::vector<GoldExample> gold = LoadGold(config_.gold);
    auto romanizer = MakeRomanizer(config_);
    ReorderOptions options{config_.max_tokens, config_.substitution_cost};
    std::vector<std::string> none, edit;
    for (const auto &example : gold) {
      none.push_back(example.input);
      edit.push_back(example.english.empty()
                         ? example.input
                         : ReorderName(example.input, example.english, *romanizer, options).chosen);
    }
    ReorderingScores baseline = EvaluateReordering(none, gold);
    ReorderingScores reordered = EvaluateReordering(edit, gold);
    std::string tsv = "system\taccuracy\tmean_f1\tprecision\trecall\texamples\n";
    for (const auto &[name, s] : {std::pair{"none", baseline}, std::pair{"edit_distance", reordered}}) {
      tsv += std::string(name) + "\t" + FormatPercent(s.accuracy) + "\t" +
             FormatPercent(s.mean_f1) + "\t" + FormatPercent(s.precision) + "\t" +
             FormatPercent(s.recall) + "\t" + std::to_string(s.examples) + "\n";
    }
    WriteFileAtomically(Artifact(artifacts::kEvaluation), tsv);
    report.counters["gold_examples"] = gold.size();
    report.metrics = {{"none_accuracy", baseline.accuracy},
                      {"none_mean_f1", baseline.mean_f1},
                      {"edit_distance_accuracy", reordered.accuracy},
                      {"edit_distance_mean_f1", reordered.mean_f1},
                      {"edit_distance_precision", reordered.precision},
                      {"edit_distance_recall", reordered.recall}};
    report.inputs.push_back(config_.gold);
    report.outputs.push_back(Artifact(artifacts::kEvaluation));
  }

  // Bitext of PER names against their English labels, for an external
  // aligner; written from the pre-reordering names.
  fs::path filtered = Artifact(artifacts::kFiltered);
  if (fs::exists(filtered)) {
    AtomicFile bitext(Artifact(artifacts::kBitext));
    AtomicFile languages(Artifact(artifacts::kBitextLanguages));
    uint64_t pairs = 0;
    std::vector<TypedName> group;
    auto flush = [&] {
      const TypedName *english = nullptr;
      for (const auto &row : group) {
        if (row.language == "en") english = &row;
      }
      for (const auto &row : group) {
        if (english == nullptr || &row == english || !row.types.Contains(EntityType::kPer)) {
          continue;
        }
        std::string source, target;
        for (const auto &t : SplitWhitespace(row.label)) source += (source.empty() ? "" : " ") + t;
        for (const auto &t : SplitWhitespace(english->label)) {
          target += (target.empty() ? "" : " ") + t;
        }
        bitext.Write(source + " ||| " + target + "\n");
        languages.Write(row.language + "\n");
        ++pairs;
      }
      group.clear();
    };
    ForEachTypedName(filtered, [&](const TypedName &name) {
      if (!group.empty() && group.front().qid != name.qid) flush();
      group.push_back(name);
    });
    flush();
    bitext.Commit();
    languages.Commit();
    report.counters["bitext_pairs"] = pairs;
    report.inputs.push_back(filtered);
    report.outputs.push_back(Artifact(artifacts::kBitext));
    report.outputs.push_back(Artifact(artifacts::kBitextLanguages));
  }

  if (!config_.alignments.empty()) {
    fs::path languages_path = Require(Stage::kEvaluate, Artifact(artifacts::kBitextLanguages));
    std::vector<std::string> languages;
    {
      std::ifstream in = OpenStageFile(languages_path);
      std::string line;
      while (std::getline(in, line)) languages.push_back(line);
    }
    std::ifstream in = OpenStageFile(config_.alignments);
    AlignmentParseStats stats;
    std::vector<AlignmentGraph> graphs = ParseAlignments(in, &stats);
    if (graphs.size() != languages.size()) {
      throw ParseError("evaluate: " + std::to_string(graphs.size()) + " alignment lines for " +
                       std::to_string(languages.size()) + " bitext lines");
    }
    auto mca = MeanCrossingAlignments(languages, graphs);
    uint64_t unaligned = 0;
    for (size_t i = 0; i < graphs.size(); ++i) unaligned += graphs[i].empty() ? 1 : 0;
    std::set<std::string> reported;
    for (const auto &[language, entry] : mca) reported.insert(language);
    for (const auto &language : languages) {
      if (!reported.contains(language)) {
        log_ << "[evaluate] warning: no aligned names for '" << language << "'\n";
        reported.insert(language);
      }
    }
    WriteFileAtomically(Artifact(artifacts::kMca), McaReportTsv(mca));
    WriteFileAtomically(Artifact(artifacts::kMcaHistogram),
                        HistogramTsv(McaHistogram(mca, config_.histogram_bin_width)));
    report.counters["alignment_lines"] = stats.lines;
    report.counters["alignment_malformed"] = stats.malformed;
    report.counters["unaligned_names"] = unaligned;
    report.counters["mca_languages"] = mca.size();
    report.inputs.push_back(config_.alignments);
    report.outputs.push_back(Artifact(artifacts::kMca));
    report.outputs.push_back(Artifact(artifacts::kMcaHistogram));
  }
  return report;
}

StageReport Pipeline::Stats() {
  StageReport report;
  json stats;
  auto count_lines = [](const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    uint64_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
  };
  for (const char *name : {artifacts::kEntities, artifacts::kTyped, artifacts::kCleaned,
                           artifacts::kFiltered, artifacts::kRemoved, artifacts::kReordered}) {
    fs::path path = Artifact(name);
    if (!fs::exists(path)) continue;
    uint64_t lines = count_lines(path);
    stats["stage_rows"][name] = lines;
    report.counters[std::string("rows.") + name] = lines;
    report.inputs.push_back(path);
  }
  fs::path filtered = Artifact(artifacts::kReordered);
  if (!fs::exists(filtered)) filtered = Artifact(artifacts::kFiltered);
  if (fs::exists(filtered)) {
    std::map<std::string, uint64_t> per_language;
    std::map<std::string, uint64_t> per_higher;
    ForEachTypedName(filtered, [&](const TypedName &name) {
      ++per_language[name.language];
      ++per_higher[name.language.substr(0, 2)];
    });
    stats["names_per_language"] = per_language;
    stats["names_per_higher_level_language"] = per_higher;
  }
  fs::path census = Artifact(artifacts::kCensus);
  if (fs::exists(census)) {
    std::ifstream in(census);
    std::string line;
    json rows = json::array();
    while (std::getline(in, line)) rows.push_back(line);
    stats["census"] = rows;
    report.inputs.push_back(census);
  }
  fs::path summary = Artifact(artifacts::kResource) / "summary.json";
  if (fs::exists(summary)) {
    std::ifstream in(summary);
    stats["resource"] = json::parse(in, nullptr, false);
    report.inputs.push_back(summary);
  }
  std::string text = stats.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
  WriteFileAtomically(Artifact(artifacts::kStats), text);
  out_ << text;
  report.outputs = {Artifact(artifacts::kStats)};
  return report;
}

int RunSubcommand(std::string_view name, const PipelineConfig &config, std::ostream &log,
                  std::ostream &out) {
  try {
    Pipeline pipeline(config, log, out);
    if (name == "all") {
      pipeline.RunAll();
    } else if (auto stage = ParseStage(name)) {
      pipeline.Run(*stage);
    } else {
      log << "unknown subcommand: " << name << "\n";
      return kExitConfig;
    }
    return kExitOk;
  } catch (const MissingArtifactError &e) {
    log << "error: " << e.what() << "\n";
    return kExitMissingArtifact;
  } catch (const ConfigError &e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception &e) {
    log << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace polyname
