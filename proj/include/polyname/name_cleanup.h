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

#ifndef POLYNAME_NAME_CLEANUP_H_
#define POLYNAME_NAME_CLEANUP_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace polyname {

struct CleanupDiagnostics {
  uint64_t unbalanced = 0;  // parenthesis characters left without a partner
};

// Deletes "(...)" and "（...）" groups, innermost first until nothing
// matches, then collapses whitespace runs to one space and trims. Labels
// without any parenthesis character are returned unchanged. Brackets and
// braces are kept.
std::string StripParentheticals(std::string_view label,
                                CleanupDiagnostics *diagnostics = nullptr);

}  // namespace polyname

#endif  // POLYNAME_NAME_CLEANUP_H_
