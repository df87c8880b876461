// Copyright 2026 The Realword Authors.
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

#ifndef REALWORD_ERRORS_H_
#define REALWORD_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace realword {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (bad UTF-8). Carries the offending byte offset.
class IngestError : public Error {
 public:
  IngestError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Syntax or content error in a lexicon, tagset, rule, vocabulary or model
// file. line() is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Missing or inconsistent run configuration.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::vector<std::string> missing = {})
      : Error(what), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing_paths() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

// Correction results and gold records do not line up.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace realword

#endif  // REALWORD_ERRORS_H_
