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

#ifndef POLYNAME_TYPED_NAME_H_
#define POLYNAME_TYPED_NAME_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "polyname/entity_record.h"
#include "polyname/type_inference.h"

namespace polyname {

// One (entity, language, label) row of the resource.
struct TypedName {
  Qid qid;
  std::string language;
  std::string label;
  EntityTypeSet types;

  bool operator==(const TypedName &) const = default;
};

// Stage files hold one JSON object per line:
//   {"label":...,"language":...,"qid":"Q1","types":["LOC","PER"]}
// Rows of one entity are contiguous and ordered by language code.
std::string ToJsonLine(const TypedName &name);
// Throws ParseError on malformed lines.
TypedName ParseTypedName(std::string_view line);

class TypedNameReader {
 public:
  explicit TypedNameReader(std::istream &in) : in_(in) {}
  std::optional<TypedName> Next();

 private:
  std::istream &in_;
  std::string line_;
  uint64_t line_number_ = 0;
};

}  // namespace polyname

#endif  // POLYNAME_TYPED_NAME_H_
