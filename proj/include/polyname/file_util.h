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

#ifndef POLYNAME_FILE_UTIL_H_
#define POLYNAME_FILE_UTIL_H_

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace polyname {

// Writes to "<path>.tmp" and renames over `path` on Commit(). An
// uncommitted file is removed on destruction.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path);
  ~AtomicFile();

  AtomicFile(const AtomicFile &) = delete;
  AtomicFile &operator=(const AtomicFile &) = delete;

  std::ofstream &stream() { return out_; }
  void Write(std::string_view data) { out_.write(data.data(), static_cast<std::streamsize>(data.size())); }
  // Throws IoError if any write failed.
  void Commit();

  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

void WriteFileAtomically(const std::filesystem::path &path, std::string_view data);

// Lowercase hex SHA-256 of a file's bytes. Throws IoError.
std::string Sha256File(const std::filesystem::path &path);
std::string Sha256Hex(std::string_view data);

}  // namespace polyname

#endif  // POLYNAME_FILE_UTIL_H_
