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

#include "polyname/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>

#include "polyname/error.h"
#include "polyname/unicode.h"

#ifndef POLYNAME_DATA_DIR
#define POLYNAME_DATA_DIR "data"
#endif

namespace polyname {

namespace fs = std::filesystem;

fs::path DataDir() {
  if (const char *env = std::getenv("POLYNAME_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return POLYNAME_DATA_DIR;
}

const std::vector<ConfigKey> &ConfigKeys() {
  static const std::vector<ConfigKey> keys = {
      {"paths.dump", "dump", "", "Wikidata dump (JSON array or JSONL, optionally gz/bz2)", true},
      {"paths.work_dir", "work-dir", "polyname-work", "directory for stage artifacts", true},
      {"paths.gold", "gold", "@data/gold/reorder_seed.tsv", "gold reordering set", true},
      {"paths.alignments", "alignments", "", "aligner output for <work_dir>/bitext.txt", true},
      {"ingest.format", "format", "auto", "dump framing: auto, dump-array or jsonl", false},
      {"types.per_root", "per-root", "Q5", "root class for PER", false},
      {"types.loc_root", "loc-root", "Q82794", "root class for LOC", false},
      {"types.org_root", "org-root", "Q43229", "root class for ORG", false},
      {"types.mode", "mode", "preserve-multi", "preserve-multi or disambiguate", false},
      {"scripts.allowed", "allowed-scripts", "@data/allowed_scripts.tsv",
       "allowed scripts per language", true},
      {"scripts.unicode_version", "unicode-version", "14.0",
       "Unicode version the script data must match", false},
      {"scripts.granularity", "granularity", "name", "entropy profile: name or codepoint", false},
      {"reorder.tables", "tables",
       "@data/romanization/cyrillic.tsv,@data/romanization/greek.tsv,"
       "@data/romanization/hebrew.tsv",
       "comma-separated romanization tables", true},
      {"reorder.external_command", "external-romanizer", "",
       "command mapping stdin lines to romanized stdout lines", false},
      {"reorder.input", "reorder-input", "", "input stage file (default filtered.jsonl)", true},
      {"reorder.max_tokens", "max-tokens", "6", "longest name that is permuted", false},
      {"reorder.substitution_cost", "substitution-cost", "2", "edit distance substitution cost",
       false},
      {"evaluate.histogram_bin_width", "bin-width", "0.25", "MCA histogram bin width", false},
      {"run.workers", "workers", "1", "worker threads per stage", false},
      {"fetch.endpoint", "endpoint", "", "EntityData endpoint (default from environment)",
       false},
  };
  return keys;
}

namespace {

const ConfigKey *FindKey(const std::string &name) {
  for (const auto &key : ConfigKeys()) {
    if (name == key.name) return &key;
  }
  return nullptr;
}

std::string ExpandDataDir(const std::string &value) {
  std::string out;
  size_t start = 0;
  while (true) {
    size_t comma = value.find(',', start);
    std::string part = value.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
    if (part.rfind("@data/", 0) == 0) part = (DataDir() / part.substr(6)).string();
    if (start > 0) out += ',';
    out += part;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string ResolveRelative(const std::string &value, const fs::path &base) {
  if (value.empty()) return value;
  std::string out;
  size_t start = 0;
  while (true) {
    size_t comma = value.find(',', start);
    fs::path part = value.substr(start, comma == std::string::npos ? std::string::npos
                                                                   : comma - start);
    if (part.is_relative() && part.string().rfind("@data/", 0) != 0) part = base / part;
    if (start > 0) out += ',';
    out += part.string();
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int ParseInt(const std::string &name, const std::string &value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(name + ": expected an integer, got '" + value + "'");
  }
  return out;
}

Qid ParseRoot(const std::string &name, const std::string &value) {
  auto qid = Qid::Parse(value);
  if (!qid) throw ConfigError(name + ": invalid qid '" + value + "'");
  return *qid;
}

void RequireFile(const std::string &name, const fs::path &path) {
  if (!fs::is_regular_file(path)) {
    throw ConfigError(name + ": file does not exist: " + path.string());
  }
}

}  // namespace

RawConfig::RawConfig() {
  for (const auto &key : ConfigKeys()) values_[key.name] = key.default_value;
}

void RawConfig::LoadFile(const fs::path &path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error &e) {
    throw ConfigError("cannot read config " + path.string() + ": " + e.message());
  }
  fs::path base = fs::absolute(path).parent_path();
  for (const auto &[section, children] : tree) {
    if (children.empty()) {
      throw ConfigError("config key outside a section: " + section);
    }
    for (const auto &[key, value] : children) {
      std::string name = section + "." + key;
      const ConfigKey *known = FindKey(name);
      if (known == nullptr) throw ConfigError("unknown config key: " + name);
      std::string text = value.get_value<std::string>();
      Set(name, known->is_path ? ResolveRelative(text, base) : text);
    }
  }
}

void RawConfig::Set(const std::string &name, const std::string &value) {
  if (FindKey(name) == nullptr) throw ConfigError("unknown config key: " + name);
  values_[name] = value;
}

const std::string &RawConfig::Get(const std::string &name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw ConfigError("unknown config key: " + name);
  return it->second;
}

PipelineConfig PipelineConfig::FromRaw(const RawConfig &raw) {
  PipelineConfig config;
  for (const auto &[name, value] : raw.values()) {
    config.echo[name] = FindKey(name)->is_path ? ExpandDataDir(value) : value;
  }
  const auto &v = config.echo;

  config.dump = v.at("paths.dump");
  config.work_dir = v.at("paths.work_dir");
  if (config.work_dir.empty()) throw ConfigError("paths.work_dir must not be empty");
  config.gold = v.at("paths.gold");
  config.alignments = v.at("paths.alignments");
  try {
    config.format = ParseDumpFormat(v.at("ingest.format"));
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("ingest.format: ") + e.what());
  }
  config.roots.per = ParseRoot("types.per_root", v.at("types.per_root"));
  config.roots.loc = ParseRoot("types.loc_root", v.at("types.loc_root"));
  config.roots.org = ParseRoot("types.org_root", v.at("types.org_root"));
  const std::string &mode = v.at("types.mode");
  if (mode == "preserve-multi") {
    config.mode = TypeMode::kPreserveMulti;
  } else if (mode == "disambiguate") {
    config.mode = TypeMode::kDisambiguate;
  } else {
    throw ConfigError("types.mode must be preserve-multi or disambiguate, got '" + mode + "'");
  }
  config.allowed_scripts = v.at("scripts.allowed");
  config.unicode_version = v.at("scripts.unicode_version");
  if (config.unicode_version != LinkedUnicodeVersion()) {
    throw ConfigError("scripts.unicode_version is " + config.unicode_version +
                      " but the linked script data is Unicode " + LinkedUnicodeVersion());
  }
  try {
    config.granularity = ParseProfileGranularity(v.at("scripts.granularity"));
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("scripts.granularity: ") + e.what());
  }
  const std::string &tables = v.at("reorder.tables");
  size_t start = 0;
  while (start <= tables.size() && !tables.empty()) {
    size_t comma = tables.find(',', start);
    std::string part = tables.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start);
    if (!part.empty()) config.romanization_tables.emplace_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  config.external_romanizer = v.at("reorder.external_command");
  config.reorder_input = v.at("reorder.input");
  config.max_tokens = ParseInt("reorder.max_tokens", v.at("reorder.max_tokens"));
  config.substitution_cost = ParseInt("reorder.substitution_cost", v.at("reorder.substitution_cost"));
  try {
    config.histogram_bin_width = std::stod(v.at("evaluate.histogram_bin_width"));
  } catch (const std::exception &) {
    throw ConfigError("evaluate.histogram_bin_width must be a number");
  }
  config.workers = ParseInt("run.workers", v.at("run.workers"));
  config.endpoint = v.at("fetch.endpoint");

  if (config.workers < 1) throw ConfigError("run.workers must be at least 1");
  if (config.max_tokens < 1) throw ConfigError("reorder.max_tokens must be at least 1");
  if (config.substitution_cost < 1) throw ConfigError("reorder.substitution_cost must be at least 1");
  if (!(config.histogram_bin_width > 0.0)) {
    throw ConfigError("evaluate.histogram_bin_width must be positive");
  }
  if (config.romanization_tables.empty() && config.external_romanizer.empty()) {
    throw ConfigError("reorder needs romanization tables or an external romanizer");
  }
  RequireFile("scripts.allowed", config.allowed_scripts);
  for (const auto &table : config.romanization_tables) RequireFile("reorder.tables", table);
  if (!config.gold.empty()) RequireFile("paths.gold", config.gold);
  if (!config.alignments.empty()) RequireFile("paths.alignments", config.alignments);
  return config;
}

}  // namespace polyname
