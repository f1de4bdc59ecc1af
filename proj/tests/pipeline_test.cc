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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filtering_stream.hpp>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "polyname/file_util.h"
#include "polyname/typed_name.h"
#include "synthetic_dump.h"

namespace polyname {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string P31(const std::string &target) {
  return R"({"mainsnak":{"snaktype":"value","property":"P31","datavalue":{"value":{"id":")" + target +
         R"("}}},"rank":"normal"})";
}

const std::string kWangLina =
    R"j({"id":"Q60834172","labels":{"en":{"value":"Wang Lina (boxer)"},"es":{"value":"Wang Lina"},"zh":{"value":"王丽娜（拳击运动员）"}},"claims":{"P31":[)j" +
    P31("Q5") + "]}}";
const std::string kBiden =
    R"({"id":"Q6279","labels":{"en":{"value":"Joe Biden"},"ru":{"value":"Байден Джо"},"uk":{"value":"Байден, Джо"}},"claims":{"P31":[)" +
    P31("Q5") + "]}}";
const std::string kPutin =
    R"({"id":"Q7747","labels":{"en":{"value":"Vladimir Putin"},"ru":{"value":"Владимир Путин"},"uk":{"value":"Володимир Путін"}},"claims":{"P31":[)" +
    P31("Q5") + "]}}";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("polyname_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path WriteDump(const std::vector<std::string> &lines) {
    fs::path path = dir_ / "dump.json";
    std::ofstream out(path);
    out << "[\n";
    for (size_t i = 0; i < lines.size(); ++i) out << lines[i] << (i + 1 < lines.size() ? ",\n" : "\n");
    out << "]\n";
    return path;
  }

  // Runs the tool with stdout/stderr captured; returns the exit status.
  int Cli(const std::string &args) {
    std::string command = std::string(POLYNAME_CLI) + " " + args + " > '" +
                          (dir_ / "stdout.txt").string() + "' 2> '" +
                          (dir_ / "stderr.txt").string() + "'";
    int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string Stdout() { return Slurp(dir_ / "stdout.txt"); }
  std::string Stderr() { return Slurp(dir_ / "stderr.txt"); }
  std::string Work() { return "--work-dir '" + (dir_ / "work").string() + "'"; }
  fs::path WorkPath(const char *name) { return dir_ / "work" / name; }

  fs::path dir_;
};

TEST_F(CliTest, CleanStripsWangLinaDisambiguator) {
  fs::path dump = WriteDump({kWangLina});
  ASSERT_EQ(Cli("ingest --dump '" + dump.string() + "' " + Work()), kExitOk) << Stderr();
  ASSERT_EQ(Cli("build-store " + Work()), kExitOk) << Stderr();
  ASSERT_EQ(Cli("typeinfer " + Work()), kExitOk) << Stderr();
  ASSERT_EQ(Cli("clean " + Work()), kExitOk) << Stderr();
  std::ifstream in(WorkPath(artifacts::kCleaned));
  TypedNameReader reader(in);
  std::map<std::string, std::string> labels;
  while (auto name = reader.Next()) labels[name->language] = name->label;
  EXPECT_EQ(labels.at("en"), "Wang Lina");
  EXPECT_EQ(labels.at("es"), "Wang Lina");
  EXPECT_EQ(labels.at("zh"), "王丽娜");
}

TEST_F(CliTest, AllOnEmptyDumpGivesEmptyResource) {
  fs::path dump = dir_ / "empty.json";
  std::ofstream(dump) << "";
  ASSERT_EQ(Cli("all --dump '" + dump.string() + "' " + Work()), kExitOk) << Stderr();
  for (const char *file : {"combined_names.tsv", "per_names.tsv", "loc_names.tsv", "org_names.tsv"}) {
    EXPECT_EQ(Slurp(dir_ / "work" / artifacts::kResource / file),
              "wikidata_id\teng\tlabel\tlanguage\ttype\n");
  }
}

TEST_F(CliTest, ReorderRerunMakesNoFurtherChanges) {
  fs::path dump = WriteDump({kBiden, kWangLina, kPutin});
  ASSERT_EQ(Cli("all --dump '" + dump.string() + "' " + Work()), kExitOk) << Stderr();
  std::string first = Slurp(WorkPath(artifacts::kDecisions));
  EXPECT_NE(first.find("Байден Джо\tДжо Байден\t10\t6\t1"), std::string::npos) << first;
  std::string combined = Slurp(dir_ / "work" / artifacts::kResource / "combined_names.tsv");
  EXPECT_NE(combined.find("Q6279\tJoe Biden\tДжо Байден\tru\tPER"), std::string::npos);
  EXPECT_NE(combined.find("Q6279\tJoe Biden\tДжо Байден\tuk\tPER"), std::string::npos);

  ASSERT_EQ(Cli("reorder " + Work() + " --reorder-input '" +
                WorkPath(artifacts::kReordered).string() + "'"),
            kExitOk)
      << Stderr();
  std::string second = Slurp(WorkPath(artifacts::kDecisions));
  EXPECT_EQ(std::count(second.begin(), second.end(), '\n'),
            std::count(first.begin(), first.end(), '\n'));
  EXPECT_EQ(second.find("\t1\n"), std::string::npos) << second;
  EXPECT_NE(Stderr().find("[reorder] reordered=0"), std::string::npos) << Stderr();
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli("typeinfer " + Work()), kExitMissingArtifact);
  EXPECT_NE(Stderr().find("typeinfer"), std::string::npos);
  EXPECT_EQ(Cli("ingest --dump '" + (dir_ / "absent.json").string() + "' " + Work()),
            kExitMissingArtifact);
  EXPECT_EQ(Cli("ingest --workers 0 " + Work()), kExitConfig);
  EXPECT_EQ(Cli("ingest --mode sometimes " + Work()), kExitConfig);
  EXPECT_EQ(Cli("ingest --unicode-version 9.0 " + Work()), kExitConfig);
  EXPECT_EQ(Cli("ingest --allowed-scripts /nonexistent.tsv " + Work()), kExitConfig);
  EXPECT_EQ(Cli("no-such-stage"), kExitConfig);

  fs::create_directories(dir_ / "work");
  std::ofstream(WorkPath(artifacts::kEntities)) << "{\"qid\":\"Q1\",\"labels\":{}}\nnot json\n";
  EXPECT_EQ(Cli("build-store " + Work()), kExitRuntime) << Stderr();
}

TEST_F(CliTest, FetchRejectsInvalidQidWithoutNetwork) {
  EXPECT_EQ(Cli("fetch Q0 -o '" + (dir_ / "f.jsonl").string() +
                "' --endpoint http://127.0.0.1:9/none"),
            kExitConfig);
  EXPECT_FALSE(fs::exists(dir_ / "f.jsonl"));
}

TEST_F(CliTest, FetchFromLocalEndpointWritesCanonicalJsonl) {
  httplib::Server server;
  server.Get(R"(/EntityData/(Q\d+)\.json)", [](const httplib::Request &req, httplib::Response &res) {
    if (req.matches[1] != "Q60834172") {
      res.status = 404;
      return;
    }
    res.set_content(R"({"entities":{"Q60834172":)" + kWangLina + "}}", "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  std::string endpoint = "http://127.0.0.1:" + std::to_string(port) + "/EntityData";
  fs::path out = dir_ / "fixture.jsonl";
  int ok = Cli("fetch Q60834172 -o '" + out.string() + "' --endpoint " + endpoint);
  int missing = Cli("fetch Q404 -o '" + (dir_ / "x.jsonl").string() + "' --endpoint " + endpoint);
  server.stop();
  thread.join();
  EXPECT_EQ(ok, kExitOk) << Stderr();
  EXPECT_EQ(Slurp(out),
            R"j({"instance_of":["Q5"],"labels":{"en":"Wang Lina (boxer)","es":"Wang Lina","zh":"王丽娜（拳击运动员）"},"qid":"Q60834172","subclass_of":[]})j"
            "\n");
  EXPECT_EQ(missing, kExitRuntime);
}

// Manifest lines with the timing fields removed.
std::vector<nlohmann::json> StableManifest(const fs::path &path) {
  std::vector<nlohmann::json> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    j.erase("started_at");
    j.erase("wall_seconds");
    out.push_back(j);
  }
  return out;
}

TEST_F(CliTest, RerunIsByteIdenticalAndManifestMatchesExceptTimes) {
  std::stringstream text;
  testing::WriteSyntheticDump(text, {.entities = 300, .seed = 5});
  fs::path dump = dir_ / "synthetic.json";
  std::ofstream(dump) << text.str();
  ASSERT_EQ(Cli("all --dump '" + dump.string() + "' " + Work()), kExitOk) << Stderr();
  std::map<std::string, std::string> hashes;
  for (const auto &entry : fs::recursive_directory_iterator(dir_ / "work")) {
    if (entry.is_regular_file() && entry.path().filename() != artifacts::kManifest) {
      hashes[entry.path().string()] = Sha256File(entry.path());
    }
  }
  auto manifest = StableManifest(WorkPath(artifacts::kManifest));
  ASSERT_EQ(manifest.size(), 7u);
  EXPECT_EQ(manifest[0]["stage"], "ingest");
  EXPECT_EQ(manifest[6]["stage"], "emit");
  EXPECT_TRUE(manifest[6]["outputs"].contains("resource/combined_names.tsv"));

  ASSERT_EQ(Cli("all --dump '" + dump.string() + "' " + Work()), kExitOk) << Stderr();
  for (const auto &[path, hash] : hashes) EXPECT_EQ(Sha256File(path), hash) << path;
  auto again = StableManifest(WorkPath(artifacts::kManifest));
  ASSERT_EQ(again.size(), 14u);
  for (size_t i = 0; i < 7; ++i) EXPECT_EQ(again[i + 7], manifest[i]) << i;
}

TEST_F(CliTest, FlagsOverrideConfigFileAndAreEchoed) {
  fs::path dump = WriteDump({kBiden});
  fs::path ini = dir_ / "pipeline.ini";
  std::ofstream(ini) << "[paths]\ndump = dump.json\nwork_dir = work\n[reorder]\nmax_tokens = 4\n"
                        "[run]\nworkers = 2\n";
  ASSERT_EQ(Cli("ingest -c '" + ini.string() + "' --workers 3"), kExitOk) << Stderr();
  auto manifest = StableManifest(WorkPath(artifacts::kManifest));
  ASSERT_EQ(manifest.size(), 1u);
  EXPECT_EQ(manifest[0]["config"]["run.workers"], "3");
  EXPECT_EQ(manifest[0]["config"]["reorder.max_tokens"], "4");
  EXPECT_EQ(manifest[0]["config"]["paths.dump"], dump.string());
  std::ofstream(ini, std::ios::app) << "[bogus]\nkey = 1\n";
  EXPECT_EQ(Cli("ingest -c '" + ini.string() + "'"), kExitConfig);
}

TEST_F(CliTest, StatsPrintsJsonToStdoutOnly) {
  fs::path dump = WriteDump({kBiden, kWangLina});
  ASSERT_EQ(Cli("all --dump '" + dump.string() + "' " + Work()), kExitOk);
  ASSERT_EQ(Cli("stats " + Work()), kExitOk) << Stderr();
  auto stats = nlohmann::json::parse(Stdout());
  EXPECT_EQ(stats["resource"]["entities"], 2);
  EXPECT_TRUE(fs::exists(WorkPath(artifacts::kStats)));
}

TEST_F(CliTest, EvaluateScoresSeedGoldSet) {
  ASSERT_EQ(Cli("evaluate " + Work()), kExitOk) << Stderr();
  std::string eval = Slurp(WorkPath(artifacts::kEvaluation));
  EXPECT_EQ(eval.rfind("system\taccuracy\tmean_f1\tprecision\trecall\texamples\nnone\t", 0), 0u)
      << eval;
  EXPECT_NE(eval.find("\nedit_distance\t100.0\t100.0\t100.0\t100.0\t"), std::string::npos) << eval;
}

TEST_F(CliTest, EvaluateComputesMcaFromAlignments) {
  fs::path dump = WriteDump({kBiden, kWangLina});
  ASSERT_EQ(Cli("all --dump '" + dump.string() + "' " + Work()), kExitOk);
  ASSERT_EQ(Cli("evaluate " + Work()), kExitOk);
  // One alignment line per bitext line: reverse every pair.
  std::ifstream bitext(WorkPath(artifacts::kBitext));
  std::ofstream alignments(dir_ / "align.txt");
  std::string line;
  int lines = 0;
  while (std::getline(bitext, line)) {
    alignments << (line.find("Байден Джо") == 0 ? "0-1 1-0" : "0-0 1-1") << "\n";
    ++lines;
  }
  alignments.close();
  ASSERT_GT(lines, 0);
  ASSERT_EQ(Cli("evaluate " + Work() + " --alignments '" + (dir_ / "align.txt").string() + "'"),
            kExitOk)
      << Stderr();
  EXPECT_EQ(Slurp(WorkPath(artifacts::kMca)).rfind("language\tname_count\tmca\n", 0), 0u);
  EXPECT_TRUE(fs::exists(WorkPath(artifacts::kMcaHistogram)));
}

class PipelineTest : public CliTest {};

TEST_F(PipelineTest, DisambiguateModeEmitsOneTypePerEntity) {
  std::stringstream text;
  testing::WriteSyntheticDump(text, {.entities = 400, .seed = 9});
  fs::path dump = dir_ / "synthetic.json";
  std::ofstream(dump) << text.str();
  RawConfig raw;
  raw.Set("paths.dump", dump.string());
  raw.Set("paths.work_dir", (dir_ / "work").string());
  raw.Set("types.mode", "disambiguate");
  std::ostringstream log, out;
  Pipeline pipeline(PipelineConfig::FromRaw(raw), log, out);
  pipeline.RunAll();
  std::ifstream in(pipeline.Artifact(artifacts::kTyped));
  TypedNameReader reader(in);
  int rows = 0;
  while (auto name = reader.Next()) {
    EXPECT_EQ(name->types.size(), 1);
    ++rows;
  }
  EXPECT_GT(rows, 0);
  std::string census = Slurp(pipeline.Artifact(artifacts::kCensus));
  EXPECT_NE(census.find('+'), std::string::npos) << "census keeps multi-type combinations";
}

TEST_F(PipelineTest, GzipDumpMatchesPlainDump) {
  std::stringstream text;
  testing::WriteSyntheticDump(text, {.entities = 200, .seed = 3});
  fs::path plain = dir_ / "d.json", gz = dir_ / "d.json.gz";
  std::ofstream(plain) << text.str();
  {
    std::ofstream file(gz, std::ios::binary);
    boost::iostreams::filtering_ostream zipped;
    zipped.push(boost::iostreams::gzip_compressor());
    zipped.push(file);
    zipped << text.str();
  }
  ASSERT_EQ(Cli("ingest --dump '" + plain.string() + "' --work-dir '" + (dir_ / "a").string() + "'"),
            kExitOk);
  ASSERT_EQ(Cli("ingest --workers 2 --dump '" + gz.string() + "' --work-dir '" +
                (dir_ / "b").string() + "'"),
            kExitOk);
  EXPECT_EQ(Sha256File(dir_ / "a" / artifacts::kEntities), Sha256File(dir_ / "b" / artifacts::kEntities));
}

TEST(StageTest, NamesRoundTrip) {
  for (Stage stage : CanonicalStageOrder()) EXPECT_EQ(ParseStage(StageName(stage)), stage);
  EXPECT_EQ(CanonicalStageOrder().size(), 7u);
  EXPECT_EQ(StageName(CanonicalStageOrder()[3]), "clean");
  EXPECT_FALSE(ParseStage("all"));
}

}  // namespace
}  // namespace polyname
