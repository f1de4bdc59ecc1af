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

#include "polyname/dump_ingest.h"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <thread>

#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filtering_stream.hpp>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "json.hpp"
#include "polyname/unicode.h"

namespace polyname {

using nlohmann::json;

namespace {

enum class Outcome { kRecord, kFraming, kMalformed, kMissingId, kNonItem };

// Reads targets of non-deprecated statements with a value snak.
void ReadClaimTargets(const json &claims, const char *property, std::set<Qid> &out) {
  auto it = claims.find(property);
  if (it == claims.end() || !it->is_array()) return;
  for (const json &statement : *it) {
    if (!statement.is_object()) continue;
    auto rank = statement.find("rank");
    if (rank != statement.end() && rank->is_string() && *rank == "deprecated") continue;
    auto snak = statement.find("mainsnak");
    if (snak == statement.end() || !snak->is_object()) continue;
    auto type = snak->find("snaktype");
    if (type != snak->end() && type->is_string() && *type != "value") continue;
    auto datavalue = snak->find("datavalue");
    if (datavalue == snak->end() || !datavalue->is_object()) continue;
    auto value = datavalue->find("value");
    if (value == datavalue->end() || !value->is_object()) continue;
    std::optional<Qid> target;
    if (auto id = value->find("id"); id != value->end() && id->is_string()) {
      target = Qid::Parse(id->get<std::string>());
    } else if (auto num = value->find("numeric-id");
               num != value->end() && num->is_number_unsigned()) {
      target = Qid(num->get<uint64_t>());
    }
    if (target && target->valid()) out.insert(*target);
  }
}

void ReadQidArray(const json &object, const char *key, std::set<Qid> &out) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_array()) return;
  for (const json &v : *it) {
    if (!v.is_string()) continue;
    if (auto q = Qid::Parse(v.get<std::string>())) out.insert(*q);
  }
}

void AddLabel(EntityRecord &record, const std::string &code, const std::string &raw,
              IngestCounters &counters) {
  std::string label = TrimWhitespace(raw);
  if (!LanguageCode::IsValid(code) || label.empty()) {
    ++counters.dropped_labels;
    return;
  }
  if (HasFormatControls(label)) ++counters.labels_with_control_chars;
  record.labels[code] = std::move(label);
}

Outcome ParseObject(const json &entity, EntityRecord &record, IngestCounters &counters) {
  if (!entity.is_object()) return Outcome::kMalformed;
  bool canonical = entity.contains("qid");
  auto id = entity.find(canonical ? "qid" : "id");
  if (id == entity.end() || !id->is_string()) return Outcome::kMissingId;
  auto qid = Qid::Parse(id->get<std::string>());
  if (!qid) return Outcome::kNonItem;
  record.qid = *qid;

  if (auto labels = entity.find("labels"); labels != entity.end() && labels->is_object()) {
    for (const auto &[code, value] : labels->items()) {
      if (value.is_string()) {
        AddLabel(record, code, value.get<std::string>(), counters);
      } else if (value.is_object()) {
        auto text = value.find("value");
        if (text != value.end() && text->is_string()) {
          AddLabel(record, code, text->get<std::string>(), counters);
        }
      }
    }
  }
  if (canonical) {
    ReadQidArray(entity, "instance_of", record.instance_of);
    ReadQidArray(entity, "subclass_of", record.subclass_of);
  } else if (auto claims = entity.find("claims");
             claims != entity.end() && claims->is_object()) {
    ReadClaimTargets(*claims, "P31", record.instance_of);
    ReadClaimTargets(*claims, "P279", record.subclass_of);
  }
  return Outcome::kRecord;
}

std::string_view StripFraming(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
    line.remove_suffix(1);
  }
  if (!line.empty() && line.back() == ',') line.remove_suffix(1);
  return line;
}

Outcome ParseLine(std::string_view line, bool array_framing, EntityRecord &record,
                  IngestCounters &counters) {
  std::string_view body = array_framing ? StripFraming(line) : line;
  size_t first = body.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return Outcome::kFraming;
  if (array_framing && (body.substr(first) == "[" || body.substr(first) == "]")) {
    return Outcome::kFraming;
  }
  json entity = json::parse(body, nullptr, false);
  if (entity.is_discarded()) return Outcome::kMalformed;
  return ParseObject(entity, record, counters);
}

void Count(Outcome outcome, IngestCounters &counters) {
  switch (outcome) {
    case Outcome::kRecord: ++counters.records; break;
    case Outcome::kMalformed: ++counters.skipped_malformed; break;
    case Outcome::kMissingId: ++counters.skipped_missing_id; break;
    case Outcome::kNonItem: ++counters.skipped_non_item; break;
    case Outcome::kFraming: break;
  }
}

}  // namespace

DumpFormat ParseDumpFormat(std::string_view name) {
  if (name == "auto") return DumpFormat::kAuto;
  if (name == "dump-array") return DumpFormat::kDumpArray;
  if (name == "jsonl") return DumpFormat::kJsonl;
  throw std::invalid_argument("unknown dump format: " + std::string(name));
}

IngestCounters &IngestCounters::operator+=(const IngestCounters &other) {
  lines += other.lines;
  records += other.records;
  skipped_malformed += other.skipped_malformed;
  skipped_missing_id += other.skipped_missing_id;
  skipped_non_item += other.skipped_non_item;
  dropped_labels += other.dropped_labels;
  labels_with_control_chars += other.labels_with_control_chars;
  return *this;
}

std::optional<EntityRecord> ParseEntityLine(std::string_view line, IngestCounters &counters) {
  EntityRecord record;
  Outcome outcome = ParseLine(line, true, record, counters);
  Count(outcome, counters);
  if (outcome != Outcome::kRecord) return std::nullopt;
  return record;
}

EntityRecord ParseEntity(std::string_view json_text) {
  json entity = json::parse(json_text, nullptr, false);
  if (entity.is_discarded()) throw ParseError("entity is not valid JSON");
  IngestCounters counters;
  EntityRecord record;
  switch (ParseObject(entity, record, counters)) {
    case Outcome::kRecord: return record;
    case Outcome::kMissingId: throw ParseError("entity has no id");
    case Outcome::kNonItem: throw ParseError("entity is not a Wikidata item");
    default: throw ParseError("entity is not a JSON object");
  }
}

std::unique_ptr<std::istream> OpenInput(const std::string &path) {
  namespace io = boost::iostreams;
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) throw IoError("cannot open " + path);
  unsigned char magic[3] = {0, 0, 0};
  file->read(reinterpret_cast<char *>(magic), 3);
  file->clear();
  file->seekg(0);
  bool gzip = magic[0] == 0x1f && magic[1] == 0x8b;
  bool bzip2 = magic[0] == 'B' && magic[1] == 'Z' && magic[2] == 'h';
  if (!gzip && !bzip2) return file;

  // Owns the underlying file for the lifetime of the filtering stream.
  struct Decompressing : io::filtering_istream {
    std::unique_ptr<std::ifstream> source;
    ~Decompressing() override { reset(); }
  };
  auto stream = std::make_unique<Decompressing>();
  if (gzip) {
    stream->push(io::gzip_decompressor());
  } else {
    stream->push(io::bzip2_decompressor());
  }
  stream->push(*file);
  stream->source = std::move(file);
  return stream;
}

DumpReader::DumpReader(std::istream &input, DumpFormat format, int workers,
                       size_t batch_size)
    : input_(input),
      format_(format),
      workers_(std::max(1, workers)),
      batch_size_(std::max<size_t>(1, batch_size)) {}

std::optional<EntityRecord> DumpReader::Next() {
  while (ready_.empty()) {
    if (!FillBatch()) return std::nullopt;
  }
  EntityRecord record = std::move(ready_.front());
  ready_.pop_front();
  return record;
}

bool DumpReader::FillBatch() {
  if (eof_) return false;
  if (!input_) throw IoError("input stream is not readable");
  if (!format_resolved_) {
    if (format_ == DumpFormat::kAuto) {
      int c;
      while ((c = input_.peek()) != EOF && std::isspace(c)) input_.get();
      format_ = c == '[' ? DumpFormat::kDumpArray : DumpFormat::kJsonl;
    }
    format_resolved_ = true;
  }

  std::vector<std::string> lines;
  lines.reserve(batch_size_);
  std::string line;
  while (lines.size() < batch_size_ && std::getline(input_, line)) {
    lines.push_back(std::move(line));
  }
  if (input_.bad()) throw IoError("read error on input stream");
  if (lines.size() < batch_size_) eof_ = true;
  if (lines.empty()) return false;

  const bool array_framing = format_ == DumpFormat::kDumpArray;
  std::vector<EntityRecord> records(lines.size());
  std::vector<Outcome> outcomes(lines.size());
  std::vector<IngestCounters> partial(workers_);
  auto work = [&](size_t worker) {
    for (size_t i = worker; i < lines.size(); i += workers_) {
      outcomes[i] = ParseLine(lines[i], array_framing, records[i], partial[worker]);
    }
  };
  if (workers_ == 1 || lines.size() < 2) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (int w = 1; w < workers_; ++w) threads.emplace_back(work, w);
    work(0);
  }
  for (const auto &p : partial) counters_ += p;
  counters_.lines += lines.size();
  for (size_t i = 0; i < lines.size(); ++i) {
    Count(outcomes[i], counters_);
    if (outcomes[i] == Outcome::kRecord) ready_.push_back(std::move(records[i]));
  }
  return true;
}

std::vector<EntityRecord> ParseDumpStream(std::istream &input, DumpFormat format,
                                          IngestCounters *counters) {
  DumpReader reader(input, format);
  std::vector<EntityRecord> out;
  while (auto record = reader.Next()) out.push_back(std::move(*record));
  if (counters) *counters = reader.counters();
  return out;
}

std::string DefaultEntityEndpoint() {
  const char *env = std::getenv(kEndpointEnvVar);
  if (env != nullptr && *env != '\0') return env;
  return std::string(kDefaultEntityEndpoint);
}

EntityRecord FetchEntity(std::string_view qid_text, const std::string &endpoint) {
  Qid qid = Qid::FromString(qid_text);

  // Split "scheme://host[:port]/path" into the client origin and path prefix.
  size_t scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("endpoint must be an absolute URL: " + endpoint);
  }
  size_t path_begin = endpoint.find('/', scheme_end + 3);
  std::string origin = endpoint.substr(0, path_begin);
  std::string prefix = path_begin == std::string::npos ? "" : endpoint.substr(path_begin);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  auto response = client.Get(prefix + "/" + qid.str() + ".json");
  if (!response) {
    throw FetchError(0, true,
                     "request to " + origin + " failed: " + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    bool retryable = response->status == 429 || response->status >= 500;
    throw FetchError(response->status, retryable,
                     "fetching " + qid.str() + " returned HTTP " +
                         std::to_string(response->status));
  }
  json body = json::parse(response->body, nullptr, false);
  if (body.is_discarded()) throw ParseError("response for " + qid.str() + " is not JSON");
  auto entities = body.find("entities");
  if (entities == body.end() || !entities->is_object() || entities->empty()) {
    throw ParseError("response for " + qid.str() + " has no entities");
  }
  // Redirected items are keyed by their target id.
  auto it = entities->find(qid.str());
  const json &entity = it != entities->end() ? *it : entities->begin().value();
  return ParseEntity(entity.dump());
}

}  // namespace polyname
