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

#ifndef POLYNAME_ERROR_H_
#define POLYNAME_ERROR_H_

#include <stdexcept>
#include <string>

namespace polyname {

// Base class for all pipeline errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input could not be read or output could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input that cannot be skipped.
class ParseError : public Error {
 public:
  using Error::Error;
};

// The entity store saw two different records with the same qid.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Configuration is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A stage was started without the artifacts produced by an earlier stage.
class MissingArtifactError : public Error {
 public:
  MissingArtifactError(std::string stage, const std::string &what)
      : Error(what), stage_(std::move(stage)) {}
  const std::string &stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace polyname

#endif  // POLYNAME_ERROR_H_
