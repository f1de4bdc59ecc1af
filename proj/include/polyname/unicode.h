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

#ifndef POLYNAME_UNICODE_H_
#define POLYNAME_UNICODE_H_

#include <string>
#include <string_view>
#include <vector>

namespace polyname {

// Decodes UTF-8 into code points. Ill-formed sequences become U+FFFD.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(std::u32string_view text);

// True for Unicode White_Space code points.
bool IsWhitespace(char32_t c);

// Removes leading and trailing Unicode whitespace.
std::string TrimWhitespace(std::string_view text);

// Splits on runs of Unicode whitespace; never yields empty tokens.
std::vector<std::string> SplitWhitespace(std::string_view text);

// True if the text contains zero-width or bidirectional formatting controls.
bool HasFormatControls(std::string_view text);

// Unicode version of the linked character database, e.g. "14.0".
std::string LinkedUnicodeVersion();

}  // namespace polyname

#endif  // POLYNAME_UNICODE_H_
