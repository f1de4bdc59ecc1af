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

#include "polyname/name_cleanup.h"

#include "polyname/unicode.h"

namespace polyname {

namespace {

constexpr char32_t kOpen = U'(';
constexpr char32_t kClose = U')';
constexpr char32_t kWideOpen = U'（';
constexpr char32_t kWideClose = U'）';

bool IsParen(char32_t c) {
  return c == kOpen || c == kClose || c == kWideOpen || c == kWideClose;
}

// One pass: removes every group whose content holds no parenthesis.
bool RemoveInnermost(std::u32string &text) {
  std::u32string out;
  out.reserve(text.size());
  bool removed = false;
  size_t i = 0;
  while (i < text.size()) {
    char32_t c = text[i];
    if (c == kOpen || c == kWideOpen) {
      char32_t close = c == kOpen ? kClose : kWideClose;
      size_t j = i + 1;
      while (j < text.size() && !IsParen(text[j])) ++j;
      if (j < text.size() && text[j] == close) {
        i = j + 1;
        removed = true;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  text.swap(out);
  return removed;
}

}  // namespace

std::string StripParentheticals(std::string_view label, CleanupDiagnostics *diagnostics) {
  std::u32string text = DecodeUtf8(label);
  bool any_paren = false;
  for (char32_t c : text) any_paren |= IsParen(c);
  if (!any_paren) return std::string(label);

  while (RemoveInnermost(text)) {
  }

  std::u32string collapsed;
  collapsed.reserve(text.size());
  bool pending_space = false;
  for (char32_t c : text) {
    if (IsWhitespace(c)) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) collapsed.push_back(U' ');
    pending_space = false;
    collapsed.push_back(c);
    if (diagnostics != nullptr && IsParen(c)) ++diagnostics->unbalanced;
  }
  return EncodeUtf8(collapsed);
}

}  // namespace polyname
