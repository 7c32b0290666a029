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
#include <variant>
#include <vector>

#include "arcforge/common/types.h"
#include "arcforge/common/value.h"
#include "arcforge/mem/catalog.h"
#include "arcforge/query/ast.h"
#include "arcforge/vec/collection.h"

namespace arcforge::query {

enum class ColumnKind : uint8_t { kValue, kVertex, kEdge };

struct ColumnDef {
  std::string name;
  ColumnKind kind = ColumnKind::kValue;
  std::optional<LabelId> label;  // vertex or edge label when statically known
  bool hidden = false;           // anonymous pattern elements
};

using Schema = std::vector<ColumnDef>;

enum class Builtin : uint8_t { kId, kLabel, kVectorNorm, kVectorDistance, kVectorSimilarity };

struct BoundExpr;
using BoundPtr = std::shared_ptr<const BoundExpr>;

/// Expression resolved against an operator's input schema.
struct BoundExpr {
  enum class Kind : uint8_t {
    kConst,     // value
    kParam,     // name
    kColumn,    // column (name kept for rendering)
    kProperty,  // field `name` of the vertex/edge in `column`
    kBinary,
    kUnary,
    kBuiltin,
    kList,      // vector built from numeric args
  };

  Kind kind = Kind::kConst;
  PropertyValue value;
  std::string name;
  size_t column = 0;
  std::string column_name;
  // kProperty
  mem::LabelKind owner_kind = mem::LabelKind::kVertex;
  std::optional<LabelId> owner_label;
  std::optional<FieldId> field;  // resolved when owner_label is known
  bool id_field = false;         // the key pseudo-field
  // operators
  BinaryOp op = BinaryOp::kEq;
  UnaryOp uop = UnaryOp::kNot;
  Builtin fn = Builtin::kId;
  vec::Metric metric = vec::Metric::kEuclidean;
  std::vector<BoundPtr> args;

  /// True when the value does not depend on any row.
  bool IsConstant() const;
  std::string ToString() const;
};

enum class OpKind : uint8_t {
  kVertexScan,
  kVertexVectorScan,
  kExpand,
  kVarLengthExpand,
  kFilter,
  kProject,
  kOrderBy,
  kLimit,
  kAggregate,
  kCallProcedure,
  kCreate,
  kCreateIndex,
};

std::string_view OpName(OpKind kind);

struct ScanArgs {
  std::string var;
  std::optional<LabelId> label;
  std::string label_name;
  BoundPtr key;  // point lookup on the id pseudo-field
};

struct FilterTerm {
  std::string field;
  vec::CompareOp op = vec::CompareOp::kEq;
  BoundPtr value;
};

struct VectorScanArgs {
  std::string var;
  LabelId label = 0;
  std::string label_name;
  std::string field_name;
  std::string collection;
  vec::Metric metric = vec::Metric::kCosine;
  BoundPtr query;
  BoundPtr k;
  std::vector<FilterTerm> filter;
};

struct ExpandArgs {
  size_t from = 0;
  std::string from_var;
  std::string to_var;
  std::string edge_var;  // empty when not bound
  bool bind_edge = false;
  std::optional<LabelId> edge_label;
  std::string edge_label_name;
  RelDirection direction = RelDirection::kOut;
  std::optional<LabelId> to_label;
  std::string to_label_name;
  std::optional<size_t> into;  // target already bound: keep matching rows only
  uint32_t min_hops = 1;
  uint32_t max_hops = 1;
};

struct FilterArgs {
  BoundPtr predicate;
};

struct ProjectArgs {
  std::vector<std::pair<std::string, BoundPtr>> items;
};

struct SortKey {
  BoundPtr expr;
  bool ascending = true;
};

struct OrderByArgs {
  std::vector<SortKey> keys;
};

struct LimitArgs {
  BoundPtr count;
};

/// Grouped count(*) / count(expr). Output columns follow `outputs`, each
/// naming either a group key or an aggregate by index.
struct AggregateArgs {
  std::vector<BoundPtr> keys;
  std::vector<BoundPtr> counts;  // null entry counts rows
  std::vector<std::pair<bool, size_t>> outputs;  // (is_aggregate, index)
};

enum class Procedure : uint8_t { kPageRank, kWcc, kWriteBack, kVectorSearch };

struct CallArgs {
  Procedure procedure = Procedure::kPageRank;
  std::string name;
  std::vector<BoundPtr> args;
  std::vector<size_t> yields;  // indices into the procedure's columns
};

struct CreateNode {
  std::string var;
  bool exists = false;   // bound upstream
  size_t column = 0;     // input column when it exists, else the new column
  LabelId label = 0;
  std::string label_name;
  BoundPtr id;           // explicit key; otherwise the next free id
  std::vector<std::pair<FieldId, BoundPtr>> props;
  std::vector<std::string> prop_names;
};

struct CreateEdge {
  size_t src = 0;  // index into nodes
  size_t dst = 0;
  LabelId label = 0;
  std::string label_name;
  std::string var;
  std::optional<size_t> column;  // output column when bound to a variable
  std::vector<std::pair<FieldId, BoundPtr>> props;
  std::vector<std::string> prop_names;
};

struct CreateArgs {
  std::vector<CreateNode> nodes;
  std::vector<CreateEdge> edges;
};

struct CreateIndexArgs {
  std::string name;
  LabelId label = 0;
  FieldId field = 0;
  std::string label_name;
  std::string field_name;
  vec::CollectionConfig config;
};

using OpArgs = std::variant<ScanArgs, VectorScanArgs, ExpandArgs, FilterArgs, ProjectArgs,
                            OrderByArgs, LimitArgs, AggregateArgs, CallArgs, CreateArgs,
                            CreateIndexArgs>;

/// One operator. Plans are chains: every operator has at most one input, the
/// first operator reads a single empty row, and the last one is the sink's
/// producer.
struct PlanOp {
  OpKind kind = OpKind::kVertexScan;
  OpArgs args;
  Schema schema;  // output columns
  std::unique_ptr<PlanOp> input;

  template <typename T>
  T& as() { return std::get<T>(args); }
  template <typename T>
  const T& as() const { return std::get<T>(args); }

  /// Holds rows until its input is exhausted.
  bool blocking() const {
    return kind == OpKind::kOrderBy || kind == OpKind::kAggregate ||
           kind == OpKind::kCallProcedure;
  }
};

struct Plan {
  std::unique_ptr<PlanOp> root;
  bool mutates = false;
  bool returns_rows = true;

  /// Operators from the first producer to the root.
  std::vector<const PlanOp*> Pipeline() const;
  std::vector<PlanOp*> Pipeline();

  /// Indented tree, root first, one operator per line.
  std::string ToString() const;
};

}  // namespace arcforge::query
