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

#include "arcforge/query/parser.h"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <set>

#include "arcforge/common/error.h"
#include "arcforge/query/lexer.h"

namespace arcforge::query {

namespace {

constexpr uint32_t kMaxHops = 10;

constexpr std::array<std::string_view, 28> kReserved = {
    "MATCH", "WHERE", "RETURN", "CREATE", "CALL",  "YIELD",   "ORDER",     "BY",
    "LIMIT", "ASC",   "DESC",   "AND",    "OR",    "XOR",     "NOT",       "AS",
    "IS",    "NULL",  "TRUE",   "FALSE",  "EXPLAIN", "ON",    "OPTIONS",   "VECTOR",
    "INDEX", "ARRAY", "ASCENDING", "DESCENDING"};

class Parser {
 public:
  Parser(std::string_view text, std::vector<Token> tokens)
      : text_(text), tokens_(std::move(tokens)) {}

  Query Run() {
    Query q;
    if (AcceptKw("EXPLAIN")) q.explain = true;
    if (CheckKw("CREATE") && Peek(1).Is("VECTOR")) {
      q.create_index = CreateIndex();
    } else {
      Statement(q);
    }
    Accept(Tok::kSemicolon);
    if (!Check(Tok::kEnd)) Fail();
    return q;
  }

 private:
  // Token plumbing -------------------------------------------------------

  const Token& Cur() const { return tokens_[pos_]; }
  const Token& Peek(size_t ahead) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  void Expected(std::string what) {
    if (expected_pos_ != pos_) {
      expected_.clear();
      expected_pos_ = pos_;
    }
    expected_.insert(std::move(what));
  }

  bool Check(Tok kind) {
    if (Cur().kind == kind) return true;
    Expected(std::string(TokName(kind)));
    return false;
  }
  bool Accept(Tok kind) {
    if (!Check(kind)) return false;
    ++pos_;
    return true;
  }
  const Token& Require(Tok kind) {
    if (!Check(kind)) Fail();
    return tokens_[pos_++];
  }

  bool CheckKw(std::string_view kw) {
    if (Cur().Is(kw)) return true;
    Expected(std::string(kw));
    return false;
  }
  bool AcceptKw(std::string_view kw) {
    if (!CheckKw(kw)) return false;
    ++pos_;
    return true;
  }
  void RequireKw(std::string_view kw) {
    if (!AcceptKw(kw)) Fail();
  }

  static bool Reserved(const Token& t) {
    if (t.kind != Tok::kIdent || t.quoted) return false;
    for (auto kw : kReserved) {
      if (t.Is(kw)) return true;
    }
    return false;
  }

  /// Any identifier, keywords included (labels, fields, option keys).
  std::string Name() { return Require(Tok::kIdent).text; }

  bool CheckVariable() {
    if (Cur().kind == Tok::kIdent && !Reserved(Cur())) return true;
    Expected("identifier");
    return false;
  }
  std::string Variable() {
    if (!CheckVariable()) Fail();
    return tokens_[pos_++].text;
  }

  [[noreturn]] void Fail(std::string message = {}) const {
    const Token& t = Cur();
    std::vector<std::string> expected;
    if (expected_pos_ == pos_) expected.assign(expected_.begin(), expected_.end());
    if (message.empty()) {
      message = t.kind == Tok::kEnd ? "unexpected end of input"
                                    : fmt::format("unexpected '{}'", TokenText(t));
      if (!expected.empty()) message += fmt::format(", expected {}", fmt::join(expected, " or "));
    }
    throw SyntaxError(message, t.offset, t.line, t.column, std::move(expected));
  }

  std::string TokenText(const Token& t) const {
    if (t.kind == Tok::kString) return "\"" + t.text + "\"";
    if (t.kind == Tok::kParam) return "$" + t.text;
    return t.text;
  }

  // Statements -----------------------------------------------------------

  void Statement(Query& q) {
    bool any = false;
    if (CheckKw("CALL")) {
      q.call = Call();
      any = true;
    }
    if (CheckKw("MATCH")) {
      ++pos_;
      MatchClause m;
      m.patterns = Patterns();
      if (AcceptKw("WHERE")) m.where = Expression();
      q.match = std::move(m);
      any = true;
    } else if (q.call && CheckKw("WHERE")) {
      ++pos_;
      MatchClause m;
      m.where = Expression();
      q.match = std::move(m);
    }
    if (CheckKw("CREATE")) {
      ++pos_;
      q.create = CreateClause{Patterns()};
      any = true;
    }
    if (!any) {
      CheckKw("MATCH");
      CheckKw("CREATE");
      CheckKw("CALL");
      Fail();
    }
    if (CheckKw("RETURN")) {
      q.ret = Return();
    } else if (q.match && !q.create) {
      Fail();  // a read-only MATCH needs a RETURN
    }
  }

  CreateIndexStatement CreateIndex() {
    RequireKw("CREATE");
    RequireKw("VECTOR");
    RequireKw("INDEX");
    CreateIndexStatement s;
    s.name = Name();
    RequireKw("ON");
    Accept(Tok::kColon);
    s.label = Name();
    Require(Tok::kLParen);
    s.field = Name();
    Require(Tok::kRParen);
    if (AcceptKw("OPTIONS")) s.options = Map();
    return s;
  }

  CallClause Call() {
    CallClause c;
    c.offset = Cur().offset;
    RequireKw("CALL");
    c.procedure = Name();
    while (Accept(Tok::kDot)) c.procedure += "." + Name();
    Require(Tok::kLParen);
    if (!Accept(Tok::kRParen)) {
      do {
        c.args.push_back(Expression());
      } while (Accept(Tok::kComma));
      Require(Tok::kRParen);
    }
    if (AcceptKw("YIELD")) {
      do {
        std::string col = Variable();
        std::string alias = col;
        if (AcceptKw("AS")) alias = Variable();
        c.yields.emplace_back(std::move(col), std::move(alias));
      } while (Accept(Tok::kComma));
    }
    return c;
  }

  ReturnClause Return() {
    RequireKw("RETURN");
    ReturnClause r;
    do {
      ReturnItem item;
      size_t start = Cur().offset;
      item.expr = Expression();
      size_t end = tokens_[pos_ - 1].offset + SourceLength(tokens_[pos_ - 1]);
      if (AcceptKw("AS")) {
        item.alias = Variable();
        item.explicit_alias = true;
      } else {
        item.alias = std::string(text_.substr(start, end - start));
      }
      r.items.push_back(std::move(item));
    } while (Accept(Tok::kComma));
    if (AcceptKw("ORDER")) {
      RequireKw("BY");
      do {
        SortItem s;
        s.expr = Expression();
        if (AcceptKw("DESC") || AcceptKw("DESCENDING")) {
          s.ascending = false;
        } else if (!AcceptKw("ASC")) {
          AcceptKw("ASCENDING");
        }
        r.order_by.push_back(std::move(s));
      } while (Accept(Tok::kComma));
    }
    if (AcceptKw("LIMIT")) {
      auto e = std::make_shared<Expr>();
      e->offset = Cur().offset;
      if (Check(Tok::kParam)) {
        e->kind = Expr::Kind::kParam;
        e->name = tokens_[pos_++].text;
      } else {
        e->value = IntValue(Require(Tok::kInt));
      }
      r.limit = std::move(e);
    }
    return r;
  }

  /// Length of a token in the source text (strings and params carry
  /// delimiters the token text has dropped).
  size_t SourceLength(const Token& t) const {
    size_t next = text_.size();
    const Token* after = &t + 1;
    if (after < tokens_.data() + tokens_.size()) next = after->offset;
    size_t end = next;
    while (end > t.offset && std::isspace(static_cast<unsigned char>(text_[end - 1]))) --end;
    return end - t.offset;
  }

  // Patterns -------------------------------------------------------------

  std::vector<PathPattern> Patterns() {
    std::vector<PathPattern> out;
    do {
      out.push_back(Path());
    } while (Accept(Tok::kComma));
    return out;
  }

  PathPattern Path() {
    PathPattern p;
    p.nodes.push_back(Node());
    while (Check(Tok::kMinus) || Check(Tok::kArrowLeft)) {
      p.rels.push_back(Rel());
      p.nodes.push_back(Node());
    }
    return p;
  }

  NodePattern Node() {
    NodePattern n;
    n.offset = Cur().offset;
    Require(Tok::kLParen);
    if (CheckVariable()) n.var = tokens_[pos_++].text;
    if (Accept(Tok::kColon)) n.label = Name();
    if (Check(Tok::kLBrace)) n.props = Map();
    Require(Tok::kRParen);
    return n;
  }

  RelPattern Rel() {
    RelPattern r;
    r.offset = Cur().offset;
    bool left = Accept(Tok::kArrowLeft);
    if (!left) Require(Tok::kMinus);
    if (Accept(Tok::kLBracket)) {
      if (CheckVariable()) r.var = tokens_[pos_++].text;
      if (Accept(Tok::kColon)) r.label = Name();
      if (Accept(Tok::kStar)) Hops(r);
      if (Check(Tok::kLBrace)) r.props = Map();
      Require(Tok::kRBracket);
    }
    if (left) {
      Require(Tok::kMinus);
      r.direction = RelDirection::kIn;
    } else if (Accept(Tok::kArrowRight)) {
      r.direction = RelDirection::kOut;
    } else {
      Require(Tok::kMinus);
      r.direction = RelDirection::kBoth;
    }
    return r;
  }

  void Hops(RelPattern& r) {
    r.var_length = true;
    size_t at = pos_;
    std::optional<uint32_t> lo, hi;
    if (Check(Tok::kInt)) lo = Hop();
    if (Accept(Tok::kDotDot)) {
      if (Check(Tok::kInt)) hi = Hop();
      r.min_hops = lo.value_or(1);
      r.max_hops = hi.value_or(kMaxHops);
    } else if (lo) {
      r.min_hops = r.max_hops = *lo;
    } else {
      r.min_hops = 1;
      r.max_hops = kMaxHops;
    }
    if (r.min_hops < 1 || r.min_hops > r.max_hops || r.max_hops > kMaxHops) {
      pos_ = at;
      Fail(fmt::format("hop bounds must satisfy 1 <= min <= max <= {}", kMaxHops));
    }
  }

  uint32_t Hop() {
    auto v = IntValue(Require(Tok::kInt)).as_int();
    return v > 1000 ? 1001 : static_cast<uint32_t>(v);
  }

  PropertyMap Map() {
    Require(Tok::kLBrace);
    PropertyMap out;
    if (Accept(Tok::kRBrace)) return out;
    do {
      std::string key = Name();
      Require(Tok::kColon);
      out.emplace_back(std::move(key), Expression());
    } while (Accept(Tok::kComma));
    Require(Tok::kRBrace);
    return out;
  }

  // Expressions ----------------------------------------------------------

  static ExprPtr Binary(BinaryOp op, ExprPtr a, ExprPtr b, size_t offset) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::kBinary;
    e->op = op;
    e->offset = offset;
    e->args = {std::move(a), std::move(b)};
    return e;
  }
  static ExprPtr Unary(UnaryOp op, ExprPtr a, size_t offset) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::kUnary;
    e->uop = op;
    e->offset = offset;
    e->args = {std::move(a)};
    return e;
  }

  ExprPtr Expression() { return Or(); }

  ExprPtr Or() {
    auto lhs = Xor();
    while (CheckKw("OR")) {
      size_t at = Cur().offset;
      ++pos_;
      lhs = Binary(BinaryOp::kOr, lhs, Xor(), at);
    }
    return lhs;
  }
  ExprPtr Xor() {
    auto lhs = And();
    while (CheckKw("XOR")) {
      size_t at = Cur().offset;
      ++pos_;
      lhs = Binary(BinaryOp::kXor, lhs, And(), at);
    }
    return lhs;
  }
  ExprPtr And() {
    auto lhs = Not();
    while (CheckKw("AND")) {
      size_t at = Cur().offset;
      ++pos_;
      lhs = Binary(BinaryOp::kAnd, lhs, Not(), at);
    }
    return lhs;
  }
  ExprPtr Not() {
    if (CheckKw("NOT")) {
      size_t at = Cur().offset;
      ++pos_;
      return Unary(UnaryOp::kNot, Not(), at);
    }
    return Comparison();
  }

  ExprPtr Comparison() {
    auto lhs = Additive();
    static constexpr std::pair<Tok, BinaryOp> kOps[] = {
        {Tok::kEq, BinaryOp::kEq}, {Tok::kNeq, BinaryOp::kNeq}, {Tok::kLt, BinaryOp::kLt},
        {Tok::kLe, BinaryOp::kLe}, {Tok::kGt, BinaryOp::kGt},   {Tok::kGe, BinaryOp::kGe}};
    for (auto [tok, op] : kOps) {
      if (Check(tok)) {
        size_t at = Cur().offset;
        ++pos_;
        lhs = Binary(op, lhs, Additive(), at);
        break;
      }
    }
    if (CheckKw("IS")) {
      size_t at = Cur().offset;
      ++pos_;
      bool negated = AcceptKw("NOT");
      RequireKw("NULL");
      lhs = Unary(negated ? UnaryOp::kIsNotNull : UnaryOp::kIsNull, lhs, at);
    }
    return lhs;
  }

  ExprPtr Additive() {
    auto lhs = Multiplicative();
    while (true) {
      BinaryOp op;
      if (Check(Tok::kPlus)) {
        op = BinaryOp::kAdd;
      } else if (Check(Tok::kMinus)) {
        op = BinaryOp::kSub;
      } else {
        return lhs;
      }
      size_t at = Cur().offset;
      ++pos_;
      lhs = Binary(op, lhs, Multiplicative(), at);
    }
  }

  ExprPtr Multiplicative() {
    auto lhs = UnaryMinus();
    while (true) {
      BinaryOp op;
      if (Check(Tok::kStar)) {
        op = BinaryOp::kMul;
      } else if (Check(Tok::kSlash)) {
        op = BinaryOp::kDiv;
      } else if (Check(Tok::kPercent)) {
        op = BinaryOp::kMod;
      } else {
        return lhs;
      }
      size_t at = Cur().offset;
      ++pos_;
      lhs = Binary(op, lhs, UnaryMinus(), at);
    }
  }

  ExprPtr UnaryMinus() {
    if (Check(Tok::kMinus)) {
      size_t at = Cur().offset;
      ++pos_;
      auto operand = UnaryMinus();
      // Fold negative numeric literals so they print and plan as constants.
      if (operand->kind == Expr::Kind::kLiteral && operand->value.is_numeric()) {
        auto e = std::make_shared<Expr>(*operand);
        e->offset = at;
        if (operand->value.type() == ValueType::kInt) {
          e->value = PropertyValue(-operand->value.as_int());
        } else {
          e->value = PropertyValue(-operand->value.as_float());
        }
        return e;
      }
      return Unary(UnaryOp::kNeg, operand, at);
    }
    return Postfix();
  }

  ExprPtr Postfix() {
    auto e = Primary();
    while (Check(Tok::kDot)) {
      size_t at = Cur().offset;
      ++pos_;
      auto p = std::make_shared<Expr>();
      p->kind = Expr::Kind::kProperty;
      p->offset = at;
      p->name = Name();
      p->args = {std::move(e)};
      e = std::move(p);
    }
    return e;
  }

  PropertyValue IntValue(const Token& t) const {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw SyntaxError("integer literal out of range", t.offset, t.line, t.column, {});
    }
    return PropertyValue(v);
  }

  ExprPtr List(size_t offset) {
    Require(Tok::kLBracket);
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::kList;
    e->offset = offset;
    if (!Accept(Tok::kRBracket)) {
      do {
        e->args.push_back(Expression());
      } while (Accept(Tok::kComma));
      Require(Tok::kRBracket);
    }
    return e;
  }

  ExprPtr Primary() {
    const Token& t = Cur();
    auto e = std::make_shared<Expr>();
    e->offset = t.offset;
    switch (t.kind) {
      case Tok::kInt:
        e->value = IntValue(t);
        ++pos_;
        return e;
      case Tok::kFloat:
        e->value = PropertyValue(std::stod(t.text));
        ++pos_;
        return e;
      case Tok::kString:
        e->value = PropertyValue(t.text);
        ++pos_;
        return e;
      case Tok::kParam:
        e->kind = Expr::Kind::kParam;
        e->name = t.text;
        ++pos_;
        return e;
      case Tok::kLBracket:
        return List(t.offset);
      case Tok::kLParen: {
        ++pos_;
        auto inner = Expression();
        Require(Tok::kRParen);
        return inner;
      }
      default:
        break;
    }
    if (t.Is("TRUE") || t.Is("FALSE")) {
      e->value = PropertyValue(t.Is("TRUE"));
      ++pos_;
      return e;
    }
    if (t.Is("NULL")) {
      ++pos_;
      return e;
    }
    if (t.Is("ARRAY")) {
      ++pos_;
      return List(t.offset);
    }
    Expected("expression");
    if (t.kind == Tok::kIdent && !Reserved(t)) {
      ++pos_;
      if (Accept(Tok::kLParen)) {
        e->kind = Expr::Kind::kFunction;
        e->name = t.text;
        if (Accept(Tok::kStar)) {
          e->star = true;
        } else if (!Check(Tok::kRParen)) {
          do {
            e->args.push_back(Expression());
          } while (Accept(Tok::kComma));
        }
        Require(Tok::kRParen);
        return e;
      }
      e->kind = Expr::Kind::kVariable;
      e->name = t.text;
      return e;
    }
    Fail();
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  std::set<std::string> expected_;
  size_t expected_pos_ = SIZE_MAX;
};

}  // namespace

Query Parse(std::string_view text) { return Parser(text, Lex(text)).Run(); }

}  // namespace arcforge::query
