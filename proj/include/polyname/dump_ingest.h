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

#ifndef POLYNAME_DUMP_INGEST_H_
#define POLYNAME_DUMP_INGEST_H_

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyname/entity_record.h"
#include "polyname/error.h"

namespace polyname {

// Line framing of an entity dump.
//   kDumpArray: the official dump, "[" / "]" lines around one entity per
//               line, each line terminated by ",".
//   kJsonl:     one entity object per line.
//   kAuto:      kDumpArray if the first non-blank byte is '['.
enum class DumpFormat { kAuto, kDumpArray, kJsonl };

DumpFormat ParseDumpFormat(std::string_view name);

struct IngestCounters {
  uint64_t lines = 0;
  uint64_t records = 0;
  uint64_t skipped_malformed = 0;   // not valid JSON or not an object
  uint64_t skipped_missing_id = 0;  // no "id"/"qid"
  uint64_t skipped_non_item = 0;    // properties, lexemes, bad item ids
  uint64_t dropped_labels = 0;      // invalid language code or empty label
  uint64_t labels_with_control_chars = 0;

  IngestCounters &operator+=(const IngestCounters &other);
};

// Parses one entity object, either in Wikidata's JSON shape or the canonical
// fixture shape written by ToCanonicalJson. Returns nullopt and bumps the
// matching counter when the entity is skipped.
std::optional<EntityRecord> ParseEntityLine(std::string_view line,
                                            IngestCounters &counters);

// Same as ParseEntityLine but throws ParseError describing the problem.
EntityRecord ParseEntity(std::string_view json_text);

// Opens a file for reading, transparently decompressing gzip and bzip2
// content detected by magic bytes. Throws IoError.
std::unique_ptr<std::istream> OpenInput(const std::string &path);

// Streaming reader over a dump. Memory use is bounded by the batch size
// times the longest line. With more than one worker, lines of a batch are
// parsed concurrently and yielded in input order.
class DumpReader {
 public:
  DumpReader(std::istream &input, DumpFormat format, int workers = 1,
             size_t batch_size = 1024);

  // Returns the next record or nullopt at end of input.
  std::optional<EntityRecord> Next();

  const IngestCounters &counters() const { return counters_; }

 private:
  bool FillBatch();

  std::istream &input_;
  DumpFormat format_;
  int workers_;
  size_t batch_size_;
  bool format_resolved_ = false;
  bool eof_ = false;
  std::deque<EntityRecord> ready_;
  IngestCounters counters_;
};

// Reads every record of a stream.
std::vector<EntityRecord> ParseDumpStream(std::istream &input, DumpFormat format,
                                          IngestCounters *counters = nullptr);

// HTTP failure or unknown entity while fetching from Wikidata.
class FetchError : public Error {
 public:
  FetchError(int status, bool retryable, const std::string &what)
      : Error(what), status_(status), retryable_(retryable) {}
  int status() const { return status_; }
  bool retryable() const { return retryable_; }

 private:
  int status_;
  bool retryable_;
};

inline constexpr std::string_view kDefaultEntityEndpoint =
    "https://www.wikidata.org/wiki/Special:EntityData";
inline constexpr const char *kEndpointEnvVar = "POLYNAME_WIKIDATA_ENDPOINT";

// Endpoint from the environment, else the default.
std::string DefaultEntityEndpoint();

// Fetches <endpoint>/<qid>.json. The qid is validated before any network
// traffic (std::invalid_argument). Throws FetchError or ParseError.
EntityRecord FetchEntity(std::string_view qid, const std::string &endpoint);

}  // namespace polyname

#endif  // POLYNAME_DUMP_INGEST_H_
