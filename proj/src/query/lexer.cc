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

#include "arcforge/query/lexer.h"

#include <fmt/format.h>

#include <cctype>

#include "arcforge/common/error.h"

namespace arcforge::query {

std::string_view TokName(Tok tok) {
  switch (tok) {
    case Tok::kEnd: return "end of input";
    case Tok::kIdent: return "identifier";
    case Tok::kInt: return "integer";
    case Tok::kFloat: return "float";
    case Tok::kString: return "string";
    case Tok::kParam: return "parameter";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kLBracket: return "'['";
    case Tok::kRBracket: return "']'";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kComma: return "','";
    case Tok::kColon: return "':'";
    case Tok::kSemicolon: return "';'";
    case Tok::kDot: return "'.'";
    case Tok::kDotDot: return "'..'";
    case Tok::kStar: return "'*'";
    case Tok::kPlus: return "'+'";
    case Tok::kMinus: return "'-'";
    case Tok::kSlash: return "'/'";
    case Tok::kPercent: return "'%'";
    case Tok::kEq: return "'='";
    case Tok::kNeq: return "'<>'";
    case Tok::kLt: return "'<'";
    case Tok::kLe: return "'<='";
    case Tok::kGt: return "'>'";
    case Tok::kGe: return "'>='";
    case Tok::kArrowRight: return "'->'";
    case Tok::kArrowLeft: return "'<-'";
  }
  return "?";
}

bool Token::Is(std::string_view keyword) const {
  if (kind != Tok::kIdent || quoted || text.size() != keyword.size()) return false;
  for (size_t i = 0; i < text.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(text[i])) !=
        std::toupper(static_cast<unsigned char>(keyword[i]))) {
      return false;
    }
  }
  return true;
}

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipSpace();
      Token t;
      t.offset = pos_;
      t.line = line_;
      t.column = pos_ - line_start_ + 1;
      if (pos_ >= s_.size()) {
        t.kind = Tok::kEnd;
        out.push_back(t);
        return out;
      }
      Next(t);
      out.push_back(std::move(t));
    }
  }

 private:
  char Peek(size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }

  [[noreturn]] void Fail(const std::string& msg, size_t offset) const {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < offset && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(msg, offset, line, col, {});
  }

  void SkipSpace() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && Peek(1) == '/') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  static bool IdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool IdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  void Next(Token& t) {
    char c = Peek();
    auto one = [&](Tok k) {
      t.kind = k;
      t.text = std::string(1, c);
      ++pos_;
    };
    auto two = [&](Tok k) {
      t.kind = k;
      t.text = std::string(s_.substr(pos_, 2));
      pos_ += 2;
    };
    if (IdentStart(c)) {
      size_t start = pos_;
      while (IdentChar(Peek())) ++pos_;
      t.kind = Tok::kIdent;
      t.text = std::string(s_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(Peek(1))))) {
      Number(t);
      return;
    }
    switch (c) {
      case '`': {
        size_t start = ++pos_;
        while (pos_ < s_.size() && s_[pos_] != '`') ++pos_;
        if (pos_ >= s_.size()) Fail("unterminated quoted identifier", start - 1);
        t.kind = Tok::kIdent;
        t.quoted = true;
        t.text = std::string(s_.substr(start, pos_ - start));
        ++pos_;
        return;
      }
      case '\'':
      case '"': String(t, c); return;
      case '$': {
        size_t start = ++pos_;
        while (IdentChar(Peek())) ++pos_;
        if (pos_ == start) Fail("expected a parameter name after '$'", start - 1);
        t.kind = Tok::kParam;
        t.text = std::string(s_.substr(start, pos_ - start));
        return;
      }
      case '(': one(Tok::kLParen); return;
      case ')': one(Tok::kRParen); return;
      case '[': one(Tok::kLBracket); return;
      case ']': one(Tok::kRBracket); return;
      case '{': one(Tok::kLBrace); return;
      case '}': one(Tok::kRBrace); return;
      case ',': one(Tok::kComma); return;
      case ':': one(Tok::kColon); return;
      case ';': one(Tok::kSemicolon); return;
      case '*': one(Tok::kStar); return;
      case '+': one(Tok::kPlus); return;
      case '/': one(Tok::kSlash); return;
      case '%': one(Tok::kPercent); return;
      case '=': one(Tok::kEq); return;
      case '.':
        if (Peek(1) == '.') return two(Tok::kDotDot);
        return one(Tok::kDot);
      case '-':
        if (Peek(1) == '>') return two(Tok::kArrowRight);
        return one(Tok::kMinus);
      case '<':
        if (Peek(1) == '-') return two(Tok::kArrowLeft);
        if (Peek(1) == '=') return two(Tok::kLe);
        if (Peek(1) == '>') return two(Tok::kNeq);
        return one(Tok::kLt);
      case '>':
        if (Peek(1) == '=') return two(Tok::kGe);
        return one(Tok::kGt);
      case '!':
        if (Peek(1) == '=') return two(Tok::kNeq);
        break;
      default: break;
    }
    Fail(fmt::format("unexpected character '{}'", c), pos_);
  }

  void Number(Token& t) {
    size_t start = pos_;
    bool is_float = false;
    while (std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
    // "1..3" is a range, not a float.
    if (Peek() == '.' && Peek(1) != '.') {
      is_float = true;
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
    }
    if (Peek() == 'e' || Peek() == 'E') {
      size_t save = pos_;
      ++pos_;
      if (Peek() == '+' || Peek() == '-') ++pos_;
      if (std::isdigit(static_cast<unsigned char>(Peek()))) {
        is_float = true;
        while (std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    if (IdentStart(Peek())) Fail("malformed number", start);
    t.kind = is_float ? Tok::kFloat : Tok::kInt;
    t.text = std::string(s_.substr(start, pos_ - start));
  }

  void String(Token& t, char quote) {
    size_t start = pos_++;
    std::string out;
    while (true) {
      if (pos_ >= s_.size()) Fail("unterminated string", start);
      char c = s_[pos_++];
      if (c == quote) break;
      if (c == '\n') {
        ++line_;
        line_start_ = pos_;
      }
      if (c == '\\') {
        if (pos_ >= s_.size()) Fail("unterminated string", start);
        char e = s_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case '\\': out += '\\'; break;
          case '\'': out += '\''; break;
          case '"': out += '"'; break;
          default: Fail(fmt::format("unknown escape '\\{}'", e), pos_ - 2);
        }
        continue;
      }
      out += c;
    }
    t.kind = Tok::kString;
    t.text = std::move(out);
  }

  std::string_view s_;
  size_t pos_ = 0;
  size_t line_ = 1;
  size_t line_start_ = 0;
};

}  // namespace

std::vector<Token> Lex(std::string_view text) { return Lexer(text).Run(); }

}  // namespace arcforge::query
