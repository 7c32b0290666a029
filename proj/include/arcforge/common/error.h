/** Copyright 2026 The ArcForge Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * 	http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arcforge {

enum class ErrorCode : uint8_t {
  kUnknownVertex,
  kDuplicateVertex,
  kUnknownLabel,
  kUnknownField,
  kTypeMismatch,
  kDimensionMismatch,
  kInvalidArgument,
  kIoError,
  kCorruptCheckpoint,
  kCorruptLog,
  kPruneBeyondCheckpoint,
  kDuplicateCollection,
  kUnknownCollection,
  kBadDimension,
  kSyntaxError,
  kSemanticError,
  kRuntimeError,
  kEmptyGraph,
};

std::string_view ErrorCodeName(ErrorCode code);

/// Base exception for every engine failure. The code is what callers branch on;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source position and the tokens that would
/// have been accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, size_t offset, size_t line,
              size_t column, std::vector<std::string> expected);

  size_t offset() const noexcept { return offset_; }
  size_t line() const noexcept { return line_; }
  size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  size_t offset_;
  size_t line_;
  size_t column_;
  std::vector<std::string> expected_;
};

[[noreturn]] void Throw(ErrorCode code, const std::string& message);

}  // namespace arcforge
