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

#include "polyname/unicode.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace polyname {

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto *bytes = reinterpret_cast<const uint8_t *>(text.data());
  int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) {
      out += "\xEF\xBF\xBD";
    } else {
      out.append(reinterpret_cast<const char *>(buf), n);
    }
  }
  return out;
}

bool IsWhitespace(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

std::string TrimWhitespace(std::string_view text) {
  std::u32string cps = DecodeUtf8(text);
  size_t begin = 0;
  size_t end = cps.size();
  while (begin < end && IsWhitespace(cps[begin])) ++begin;
  while (end > begin && IsWhitespace(cps[end - 1])) --end;
  if (begin == 0 && end == cps.size()) return std::string(text);
  return EncodeUtf8(std::u32string_view(cps).substr(begin, end - begin));
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> tokens;
  std::u32string current;
  for (char32_t c : DecodeUtf8(text)) {
    if (IsWhitespace(c)) {
      if (!current.empty()) tokens.push_back(EncodeUtf8(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(EncodeUtf8(current));
  return tokens;
}

bool HasFormatControls(std::string_view text) {
  for (char32_t c : DecodeUtf8(text)) {
    switch (c) {
      case 0x200B: case 0x200C: case 0x200D: case 0x200E: case 0x200F:
      case 0x202A: case 0x202B: case 0x202C: case 0x202D: case 0x202E:
      case 0x2060: case 0x2066: case 0x2067: case 0x2068: case 0x2069:
      case 0xFEFF:
        return true;
      default:
        break;
    }
  }
  return false;
}

std::string LinkedUnicodeVersion() {
  UVersionInfo version;
  u_getUnicodeVersion(version);
  return std::to_string(version[0]) + "." + std::to_string(version[1]);
}

}  // namespace polyname
