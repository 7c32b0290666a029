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

#include "arcforge/common/error.h"

#include <fmt/format.h>

#include "arcforge/common/types.h"

namespace arcforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownVertex: return "UnknownVertex";
    case ErrorCode::kDuplicateVertex: return "DuplicateVertex";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kUnknownField: return "UnknownField";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kCorruptCheckpoint: return "CorruptCheckpoint";
    case ErrorCode::kCorruptLog: return "CorruptLog";
    case ErrorCode::kPruneBeyondCheckpoint: return "PruneBeyondCheckpoint";
    case ErrorCode::kDuplicateCollection: return "DuplicateCollection";
    case ErrorCode::kUnknownCollection: return "UnknownCollection";
    case ErrorCode::kBadDimension: return "BadDimension";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kSemanticError: return "SemanticError";
    case ErrorCode::kRuntimeError: return "RuntimeError";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
  }
  return "Unknown";
}

SyntaxError::SyntaxError(const std::string& message, size_t offset,
                         size_t line, size_t column,
                         std::vector<std::string> expected)
    : Error(ErrorCode::kSyntaxError,
            fmt::format("SyntaxError: {} at line {}, column {} (offset {})", message, line,
                        column, offset)),
      offset_(offset),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

void Throw(ErrorCode code, const std::string& message) {
  throw Error(code, fmt::format("{}: {}", ErrorCodeName(code), message));
}

std::string ToString(const VertexId& v) {
  return fmt::format("{}:{}", v.label, v.local);
}

}  // namespace arcforge
