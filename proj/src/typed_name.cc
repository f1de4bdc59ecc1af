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

#include "polyname/typed_name.h"

#include <istream>

#include "json.hpp"
#include "polyname/error.h"

namespace polyname {

using nlohmann::json;

std::string ToJsonLine(const TypedName &name) {
  json j;
  j["qid"] = name.qid.str();
  j["language"] = name.language;
  j["label"] = name.label;
  j["types"] = json::array();
  for (EntityType t : name.types.members()) j["types"].push_back(EntityTypeName(t));
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

TypedName ParseTypedName(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("typed name is not a JSON object");
  TypedName name;
  try {
    auto qid = Qid::Parse(j.at("qid").get<std::string>());
    if (!qid) throw ParseError("typed name has an invalid qid");
    name.qid = *qid;
    name.language = j.at("language").get<std::string>();
    name.label = j.at("label").get<std::string>();
    for (const json &t : j.at("types")) {
      auto type = ParseEntityType(t.get<std::string>());
      if (!type) throw ParseError("unknown entity type " + t.dump());
      name.types.Insert(*type);
    }
  } catch (const json::exception &e) {
    throw ParseError(std::string("malformed typed name: ") + e.what());
  }
  return name;
}

std::optional<TypedName> TypedNameReader::Next() {
  while (std::getline(in_, line_)) {
    ++line_number_;
    if (line_.empty()) continue;
    try {
      return ParseTypedName(line_);
    } catch (const ParseError &e) {
      throw ParseError("line " + std::to_string(line_number_) + ": " + e.what());
    }
  }
  return std::nullopt;
}

}  // namespace polyname
