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

#ifndef POLYNAME_ENTITY_RECORD_H_
#define POLYNAME_ENTITY_RECORD_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace polyname {

// Wikidata item identifier. Stored as its numeric part; Q0 is never valid.
class Qid {
 public:
  constexpr Qid() = default;
  constexpr explicit Qid(uint64_t number) : number_(number) {}

  // Parses "Q" followed by digits without a leading zero.
  static std::optional<Qid> Parse(std::string_view text);
  // Same as Parse but throws std::invalid_argument.
  static Qid FromString(std::string_view text);

  uint64_t number() const { return number_; }
  bool valid() const { return number_ != 0; }
  std::string str() const { return "Q" + std::to_string(number_); }

  auto operator<=>(const Qid &) const = default;

 private:
  uint64_t number_ = 0;
};

// Wikimedia language code such as "kk-arab".
class LanguageCode {
 public:
  // Throws std::invalid_argument unless the code is nonempty [a-z0-9-]+.
  explicit LanguageCode(std::string code);

  static bool IsValid(std::string_view code);

  const std::string &code() const { return code_; }
  // First two characters; used to count languages across scripts.
  std::string higher_level() const { return code_.substr(0, 2); }

  auto operator<=>(const LanguageCode &) const = default;

 private:
  std::string code_;
};

struct EntityRecord {
  Qid qid;
  std::map<std::string, std::string> labels;  // language code -> label
  std::set<Qid> instance_of;                  // P31
  std::set<Qid> subclass_of;                  // P279

  bool operator==(const EntityRecord &) const = default;
};

// Canonical single-line JSON for a record with sorted keys.
std::string ToCanonicalJson(const EntityRecord &record);

}  // namespace polyname

template <>
struct std::hash<polyname::Qid> {
  size_t operator()(const polyname::Qid &q) const noexcept {
    return std::hash<uint64_t>()(q.number());
  }
};

#endif  // POLYNAME_ENTITY_RECORD_H_
