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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcforge/common/value.h"

namespace arcforge::query {

enum class BinaryOp : uint8_t {
  kOr, kXor, kAnd,
  kEq, kNeq, kLt, kLe, kGt, kGe,
  kAdd, kSub, kMul, kDiv, kMod,
};

enum class UnaryOp : uint8_t { kNot, kNeg, kIsNull, kIsNotNull };

std::string_view BinaryOpSymbol(BinaryOp op);

/// Source-like form of a constant: quoted text, floats always with a point.
std::string LiteralText(const PropertyValue& v);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind : uint8_t {
    kLiteral,   // value
    kParam,     // name
    kVariable,  // name
    kProperty,  // args[0].name
    kBinary,    // args[0] op args[1]
    kUnary,     // uop args[0]
    kFunction,  // name(args); count(*) has star set
    kList,      // [args...], an ARRAY literal
  };

  Kind kind = Kind::kLiteral;
  PropertyValue value;
  std::string name;
  BinaryOp op = BinaryOp::kEq;
  UnaryOp uop = UnaryOp::kNot;
  bool star = false;
  std::vector<ExprPtr> args;
  size_t offset = 0;

  std::string ToString() const;
};

using PropertyMap = std::vector<std::pair<std::string, ExprPtr>>;

struct NodePattern {
  std::string var;  // empty when anonymous
  std::optional<std::string> label;
  PropertyMap props;
  size_t offset = 0;
};

enum class RelDirection : uint8_t { kOut, kIn, kBoth };

struct RelPattern {
  std::string var;
  std::optional<std::string> label;
  RelDirection direction = RelDirection::kOut;
  bool var_length = false;
  uint32_t min_hops = 1;
  uint32_t max_hops = 1;
  PropertyMap props;
  size_t offset = 0;
};

/// node (rel node)*
struct PathPattern {
  std::vector<NodePattern> nodes;
  std::vector<RelPattern> rels;
};

struct MatchClause {
  std::vector<PathPattern> patterns;
  ExprPtr where;
};

struct CreateClause {
  std::vector<PathPattern> patterns;
};

struct CallClause {
  std::string procedure;  // dotted name
  std::vector<ExprPtr> args;
  std::vector<std::pair<std::string, std::string>> yields;  // (column, alias)
  size_t offset = 0;
};

struct ReturnItem {
  ExprPtr expr;
  std::string alias;  // explicit alias or the source text of expr
  bool explicit_alias = false;
};

struct SortItem {
  ExprPtr expr;
  bool ascending = true;
};

struct ReturnClause {
  std::vector<ReturnItem> items;
  std::vector<SortItem> order_by;
  ExprPtr limit;
};

struct CreateIndexStatement {
  std::string name;
  std::string label;
  std::string field;
  PropertyMap options;
};

/// One statement. Clause order is fixed:
///   [CALL ... [YIELD ...]] [MATCH ... [WHERE ...]] [CREATE ...] [RETURN ...]
/// or a CREATE VECTOR INDEX statement on its own.
struct Query {
  bool explain = false;
  std::optional<CreateIndexStatement> create_index;
  std::optional<CallClause> call;
  std::optional<MatchClause> match;
  std::optional<CreateClause> create;
  std::optional<ReturnClause> ret;

  /// Canonical S-expression form; stable across runs and used for goldens.
  std::string ToString() const;
};

}  // namespace arcforge::query
