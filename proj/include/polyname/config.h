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

#ifndef POLYNAME_CONFIG_H_
#define POLYNAME_CONFIG_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "polyname/dump_ingest.h"
#include "polyname/script_filter.h"
#include "polyname/type_inference.h"

namespace polyname {

enum class TypeMode { kPreserveMulti, kDisambiguate };

// A configuration key: "section.key", its command-line flag and default.
struct ConfigKey {
  const char *name;
  const char *flag;
  const char *default_value;
  const char *help;
  bool is_path;
};

const std::vector<ConfigKey> &ConfigKeys();

// Directory holding the shipped allowed-scripts list, romanization tables
// and gold set.
std::filesystem::path DataDir();

// Raw string values for every key, layered: defaults < file < overrides.
class RawConfig {
 public:
  RawConfig();

  // Reads an INI file. Relative paths are resolved against its directory.
  // Throws ConfigError on unknown keys or unreadable files.
  void LoadFile(const std::filesystem::path &path);
  // Throws ConfigError on unknown keys.
  void Set(const std::string &name, const std::string &value);

  const std::string &Get(const std::string &name) const;
  const std::map<std::string, std::string> &values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct PipelineConfig {
  std::filesystem::path dump;
  std::filesystem::path work_dir;
  std::filesystem::path gold;
  std::filesystem::path alignments;
  DumpFormat format = DumpFormat::kAuto;
  TypeRoots roots;
  TypeMode mode = TypeMode::kPreserveMulti;
  std::filesystem::path allowed_scripts;
  std::string unicode_version;
  ProfileGranularity granularity = ProfileGranularity::kName;
  std::vector<std::filesystem::path> romanization_tables;
  std::string external_romanizer;
  std::filesystem::path reorder_input;  // empty: <work_dir>/filtered.jsonl
  int max_tokens = 6;
  int substitution_cost = 2;
  double histogram_bin_width = 0.25;
  int workers = 1;
  std::string endpoint;

  // Effective values, echoed into the run manifest.
  std::map<std::string, std::string> echo;

  // Validates and converts. Throws ConfigError.
  static PipelineConfig FromRaw(const RawConfig &raw);
};

}  // namespace polyname

#endif  // POLYNAME_CONFIG_H_
