// Copyright 2026 The Meaning Authors.
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

#ifndef MEANING_ERROR_H_
#define MEANING_ERROR_H_

#include <stdexcept>
#include <string>

namespace meaning {

enum class ErrorCode {
  kInvalidArgument,
  kContextMismatch,
  kNonSeparable,
  kUnknownWord,
  kParseError,
  kNoDescription,
  kSchema,
  kTooLarge,
};

const char *ErrorCodeName(ErrorCode code);

// Base exception for every failure the engine reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// A factor straddles a requested axis split, or a binary operation would need
// a joint grid over more than two axes. The interpreter treats this as an
// ambiguity of the current interpretation.
class NonSeparableError : public Error {
 public:
  explicit NonSeparableError(const std::string &message)
      : Error(ErrorCode::kNonSeparable, message) {}
};

class ContextMismatchError : public Error {
 public:
  explicit ContextMismatchError(const std::string &message)
      : Error(ErrorCode::kContextMismatch, message) {}
};

// Document schema violation. `path` is a JSON-pointer-like location.
class SchemaError : public Error {
 public:
  SchemaError(const std::string &path, const std::string &message)
      : Error(ErrorCode::kSchema, path + ": " + message), path_(path) {}

  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

class NoDescriptionError : public Error {
 public:
  explicit NoDescriptionError(const std::string &message)
      : Error(ErrorCode::kNoDescription, message) {}
};

inline const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kContextMismatch: return "context_mismatch";
    case ErrorCode::kNonSeparable: return "non_separable";
    case ErrorCode::kUnknownWord: return "unknown_word";
    case ErrorCode::kParseError: return "parse_error";
    case ErrorCode::kNoDescription: return "no_description";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kTooLarge: return "too_large";
  }
  return "unknown";
}

}  // namespace meaning

#endif  // MEANING_ERROR_H_
