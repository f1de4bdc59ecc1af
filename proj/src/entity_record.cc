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

#include "polyname/entity_record.h"

#include <charconv>
#include <stdexcept>

#include "json.hpp"

namespace polyname {

std::optional<Qid> Qid::Parse(std::string_view text) {
  if (text.size() < 2 || text[0] != 'Q' || text[1] < '1' || text[1] > '9') {
    return std::nullopt;
  }
  uint64_t number = 0;
  const char *begin = text.data() + 1;
  const char *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, number);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return Qid(number);
}

Qid Qid::FromString(std::string_view text) {
  auto qid = Parse(text);
  if (!qid) throw std::invalid_argument("invalid qid: " + std::string(text));
  return *qid;
}

LanguageCode::LanguageCode(std::string code) : code_(std::move(code)) {
  if (!IsValid(code_)) throw std::invalid_argument("invalid language code: " + code_);
}

bool LanguageCode::IsValid(std::string_view code) {
  if (code.empty()) return false;
  for (char c : code) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::string ToCanonicalJson(const EntityRecord &record) {
  nlohmann::json j;
  j["qid"] = record.qid.str();
  j["labels"] = nlohmann::json::object();
  for (const auto &[code, label] : record.labels) j["labels"][code] = label;
  j["instance_of"] = nlohmann::json::array();
  for (Qid q : record.instance_of) j["instance_of"].push_back(q.str());
  j["subclass_of"] = nlohmann::json::array();
  for (Qid q : record.subclass_of) j["subclass_of"].push_back(q.str());
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace polyname
