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
#include <string>
#include <string_view>
#include <vector>

namespace arcforge::query {

enum class Tok : uint8_t {
  kEnd,
  kIdent,    // bare or `quoted`
  kInt,
  kFloat,
  kString,
  kParam,    // $name; text holds the name
  kLParen, kRParen, kLBracket, kRBracket, kLBrace, kRBrace,
  kComma, kColon, kSemicolon, kDot, kDotDot, kStar, kPlus, kMinus, kSlash, kPercent,
  kEq, kNeq, kLt, kLe, kGt, kGe,
  kArrowRight,  // ->
  kArrowLeft,   // <-
};

std::string_view TokName(Tok tok);

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;  // identifier / literal text, unescaped for strings
  size_t offset = 0;
  size_t line = 1;
  size_t column = 1;
  bool quoted = false;  // `ident`

  /// Case-insensitive keyword test; quoted identifiers are never keywords.
  bool Is(std::string_view keyword) const;
};

/// Splits query text into tokens. Throws SyntaxError on a bad character or
/// an unterminated string. `//` line comments are skipped.
std::vector<Token> Lex(std::string_view text);

}  // namespace arcforge::query
