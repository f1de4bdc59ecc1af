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

// Command-line driver for the name-resource pipeline.
//
//   polyname all --dump latest-all.json.bz2 --work-dir out
//   polyname reorder --config pipeline.ini --max-tokens 5
//   polyname fetch Q7251 Q60834172 -o fixture.jsonl

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyname/config.h"
#include "polyname/dump_ingest.h"
#include "polyname/error.h"
#include "polyname/file_util.h"
#include "polyname/pipeline.h"

using namespace polyname;

namespace {

int Fetch(const std::vector<std::string> &qids, const std::string &output,
          const PipelineConfig &config) {
  std::string endpoint = config.endpoint.empty() ? DefaultEntityEndpoint() : config.endpoint;
  try {
    AtomicFile out(output);
    for (const auto &qid : qids) {
      EntityRecord record = FetchEntity(qid, endpoint);
      out.Write(ToCanonicalJson(record) + "\n");
      std::cerr << "[fetch] " << record.qid.str() << " labels=" << record.labels.size() << "\n";
    }
    out.Commit();
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const FetchError &e) {
    std::cerr << "error: " << e.what() << (e.retryable() ? " (retryable)" : "") << "\n";
    return kExitRuntime;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Builds a multilingual parallel-name resource from Wikidata dumps."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  app.add_option("-c,--config", config_file, "INI config file")->check(CLI::ExistingFile);

  std::map<std::string, std::string> overrides;
  for (const auto &key : ConfigKeys()) {
    std::string names = std::string("--") + key.flag;
    app.add_option_function<std::string>(
           names, [&overrides, name = std::string(key.name)](const std::string &value) {
             overrides[name] = value;
           },
           std::string(key.help) + " [" + key.name + "]")
        ->group("Config overrides");
  }

  std::vector<CLI::App *> stage_commands;
  auto add_stage = [&](const char *name, const char *help) {
    stage_commands.push_back(app.add_subcommand(name, help));
  };
  add_stage("all", "ingest, build-store, typeinfer, clean, filter-scripts, reorder, emit");
  add_stage("ingest", "parse a dump into canonical entity JSONL");
  add_stage("build-store", "index entities and the subclass graph");
  add_stage("typeinfer", "assign PER/LOC/ORG and write the type census");
  add_stage("clean", "remove parenthesized disambiguators");
  add_stage("filter-scripts", "drop names outside their language's scripts");
  add_stage("reorder", "normalize PER token order toward English");
  add_stage("evaluate", "score reordering on a gold set; MCA from alignments");
  add_stage("emit", "write the resource TSVs and summary");
  add_stage("stats", "print artifact statistics as JSON");

  std::vector<std::string> qids;
  std::string fetch_output;
  CLI::App *fetch = app.add_subcommand("fetch", "fetch entities from the EntityData endpoint");
  fetch->add_option("qids", qids, "item identifiers")->required();
  fetch->add_option("-o,--output", fetch_output, "canonical JSONL output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  PipelineConfig config;
  try {
    RawConfig raw;
    if (!config_file.empty()) raw.LoadFile(config_file);
    for (const auto &[name, value] : overrides) raw.Set(name, value);
    config = PipelineConfig::FromRaw(raw);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (fetch->parsed()) return Fetch(qids, fetch_output, config);
  for (CLI::App *command : stage_commands) {
    if (command->parsed()) return RunSubcommand(command->get_name(), config, std::cerr, std::cout);
  }
  return kExitConfig;
}
