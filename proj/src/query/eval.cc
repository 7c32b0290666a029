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

#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "arcforge/common/error.h"
#include "arcforge/mem/mem_engine.h"
#include "arcforge/query/executor.h"
#include "arcforge/vec/distance.h"

namespace arcforge::query {

namespace {

[[noreturn]] void Runtime(const std::string& msg) { Throw(ErrorCode::kRuntimeError, msg); }

std::optional<bool> Truth(const Datum& d) {
  const auto* v = std::get_if<PropertyValue>(&d);
  if (v == nullptr) Runtime("expected a boolean, got a vertex or edge");
  if (v->is_null()) return std::nullopt;
  if (v->type() != ValueType::kBool) {
    Runtime(fmt::format("expected a boolean, got {}", ValueTypeName(v->type())));
  }
  return v->as_bool();
}

int Sign(int c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

enum class Kind { kNumber, kText, kBool, kOther };

Kind KindOf(const PropertyValue& v) {
  if (v.is_numeric()) return Kind::kNumber;
  if (v.type() == ValueType::kText) return Kind::kText;
  if (v.type() == ValueType::kBool) return Kind::kBool;
  return Kind::kOther;
}

/// Comparison with null propagation. Values of different kinds are unequal
/// and unordered.
PropertyValue Compare(BinaryOp op, const Datum& a, const Datum& b) {
  if (IsNull(a) || IsNull(b)) return PropertyValue();
  bool equality = op == BinaryOp::kEq || op == BinaryOp::kNeq;
  std::optional<int> c;
  if (a.index() != b.index()) {
    // vertex vs value and the like
  } else if (const auto* x = std::get_if<PropertyValue>(&a)) {
    const auto& y = std::get<PropertyValue>(b);
    Kind kx = KindOf(*x), ky = KindOf(y);
    if (kx == ky && kx != Kind::kOther) {
      c = Sign(CompareValues(*x, y));
    } else if (x->type() == y.type() && equality) {
      c = *x == y ? 0 : 1;  // vectors and documents: equality only
    }
  } else if (equality || std::holds_alternative<VertexId>(a)) {
    c = Sign(CompareDatum(a, b));
  }
  if (!c) {
    if (op == BinaryOp::kEq) return PropertyValue(false);
    if (op == BinaryOp::kNeq) return PropertyValue(true);
    return PropertyValue();
  }
  switch (op) {
    case BinaryOp::kEq: return PropertyValue(*c == 0);
    case BinaryOp::kNeq: return PropertyValue(*c != 0);
    case BinaryOp::kLt: return PropertyValue(*c < 0);
    case BinaryOp::kLe: return PropertyValue(*c <= 0);
    case BinaryOp::kGt: return PropertyValue(*c > 0);
    case BinaryOp::kGe: return PropertyValue(*c >= 0);
    default: break;
  }
  return PropertyValue();
}

const PropertyValue& AsValue(const Datum& d, std::string_view what) {
  const auto* v = std::get_if<PropertyValue>(&d);
  if (v == nullptr) Runtime(fmt::format("{} needs a value, got a vertex or edge", what));
  return *v;
}

PropertyValue Arithmetic(BinaryOp op, const Datum& da, const Datum& db) {
  const auto& a = AsValue(da, BinaryOpSymbol(op));
  const auto& b = AsValue(db, BinaryOpSymbol(op));
  if (a.is_null() || b.is_null()) return PropertyValue();
  if (op == BinaryOp::kAdd && a.type() == ValueType::kText && b.type() == ValueType::kText) {
    return PropertyValue(a.as_text() + b.as_text());
  }
  if (!a.is_numeric() || !b.is_numeric()) {
    Runtime(fmt::format("cannot apply '{}' to {} and {}", BinaryOpSymbol(op),
                        ValueTypeName(a.type()), ValueTypeName(b.type())));
  }
  if (a.type() == ValueType::kInt && b.type() == ValueType::kInt) {
    int64_t x = a.as_int(), y = b.as_int(), r = 0;
    bool overflow = false;
    switch (op) {
      case BinaryOp::kAdd: overflow = __builtin_add_overflow(x, y, &r); break;
      case BinaryOp::kSub: overflow = __builtin_sub_overflow(x, y, &r); break;
      case BinaryOp::kMul: overflow = __builtin_mul_overflow(x, y, &r); break;
      case BinaryOp::kDiv:
      case BinaryOp::kMod:
        if (y == 0) Runtime("integer division by zero");
        if (x == std::numeric_limits<int64_t>::min() && y == -1) {
          overflow = true;
        } else {
          r = op == BinaryOp::kDiv ? x / y : x % y;
        }
        break;
      default: break;
    }
    if (overflow) Runtime("integer overflow");
    return PropertyValue(r);
  }
  double x = a.as_number(), y = b.as_number();
  switch (op) {
    case BinaryOp::kAdd: return PropertyValue(x + y);
    case BinaryOp::kSub: return PropertyValue(x - y);
    case BinaryOp::kMul: return PropertyValue(x * y);
    case BinaryOp::kDiv: return PropertyValue(x / y);
    case BinaryOp::kMod: return PropertyValue(std::fmod(x, y));
    default: break;
  }
  return PropertyValue();
}

const FloatVector* VectorArg(const PropertyValue& v, std::string_view fn) {
  if (v.is_null()) return nullptr;
  if (v.type() != ValueType::kVector) {
    Runtime(fmt::format("{}() expects vectors, got {}", fn, ValueTypeName(v.type())));
  }
  return &v.as_vector();
}

PropertyValue Property(const BoundExpr& e, const Datum& owner, const ExecContext& ctx) {
  if (IsNull(owner)) return PropertyValue();
  const auto& engine = *ctx.engine;
  const auto& catalog = engine.catalog();
  mem::AttrOwner attr_owner;
  LabelId label = 0;
  if (const auto* v = std::get_if<VertexId>(&owner)) {
    if (e.id_field) return PropertyValue(static_cast<int64_t>(v->local));
    attr_owner = *v;
    label = v->label;
  } else if (const auto* edge = std::get_if<EdgeRef>(&owner)) {
    attr_owner = *edge;
    label = edge->key.edge_label;
  } else {
    Runtime(fmt::format("property '{}' read from a plain value", e.name));
  }
  std::optional<FieldId> field = e.field;
  if (!field) {
    const auto* def = catalog.Label(e.owner_kind, label).FindField(e.name);
    if (def == nullptr) return PropertyValue();
    field = def->id;
  }
  try {
    return engine.GetAttribute(attr_owner, *field);
  } catch (const Error& err) {
    Runtime(fmt::format("reading '{}': {}", e.name, err.what()));
  }
}

}  // namespace

double VectorDistance(vec::Metric metric, std::span<const float> a, std::span<const float> b) {
  switch (metric) {
    case vec::Metric::kCosine: return 1.0 - vec::Distance(metric, a, b);
    case vec::Metric::kEuclidean: return vec::Distance(metric, a, b);
    case vec::Metric::kDot: return -vec::Distance(metric, a, b);
  }
  return 0.0;
}

Datum Eval(const BoundExpr& e, const RowBatch& batch, size_t row, const ExecContext& ctx) {
  using K = BoundExpr::Kind;
  switch (e.kind) {
    case K::kConst: return e.value;
    case K::kParam: {
      auto it = ctx.params == nullptr ? Params::const_iterator() : ctx.params->find(e.name);
      if (ctx.params == nullptr || it == ctx.params->end()) {
        Runtime(fmt::format("parameter ${} is not bound", e.name));
      }
      return it->second;
    }
    case K::kColumn: return batch.columns[e.column].Get(row);
    case K::kProperty: return Property(e, batch.columns[e.column].Get(row), ctx);
    case K::kBinary: {
      if (e.op == BinaryOp::kAnd || e.op == BinaryOp::kOr || e.op == BinaryOp::kXor) {
        auto a = Truth(Eval(*e.args[0], batch, row, ctx));
        if (e.op == BinaryOp::kAnd && a == false) return PropertyValue(false);
        if (e.op == BinaryOp::kOr && a == true) return PropertyValue(true);
        auto b = Truth(Eval(*e.args[1], batch, row, ctx));
        switch (e.op) {
          case BinaryOp::kAnd:
            if (b == false) return PropertyValue(false);
            return (a && b) ? PropertyValue(true) : PropertyValue();
          case BinaryOp::kOr:
            if (b == true) return PropertyValue(true);
            return (a && b) ? PropertyValue(false) : PropertyValue();
          default:
            if (!a || !b) return PropertyValue();
            return PropertyValue(*a != *b);
        }
      }
      Datum a = Eval(*e.args[0], batch, row, ctx);
      Datum b = Eval(*e.args[1], batch, row, ctx);
      switch (e.op) {
        case BinaryOp::kEq:
        case BinaryOp::kNeq:
        case BinaryOp::kLt:
        case BinaryOp::kLe:
        case BinaryOp::kGt:
        case BinaryOp::kGe: return Compare(e.op, a, b);
        default: return Arithmetic(e.op, a, b);
      }
    }
    case K::kUnary: {
      Datum a = Eval(*e.args[0], batch, row, ctx);
      switch (e.uop) {
        case UnaryOp::kIsNull: return PropertyValue(IsNull(a));
        case UnaryOp::kIsNotNull: return PropertyValue(!IsNull(a));
        case UnaryOp::kNot: {
          auto t = Truth(a);
          return t ? PropertyValue(!*t) : PropertyValue();
        }
        case UnaryOp::kNeg: {
          const auto& v = AsValue(a, "-");
          if (v.is_null()) return PropertyValue();
          if (v.type() == ValueType::kInt) {
            if (v.as_int() == std::numeric_limits<int64_t>::min()) Runtime("integer overflow");
            return PropertyValue(-v.as_int());
          }
          if (v.type() == ValueType::kFloat) return PropertyValue(-v.as_float());
          Runtime(fmt::format("cannot negate {}", ValueTypeName(v.type())));
        }
      }
      return PropertyValue();
    }
    case K::kBuiltin: {
      Datum a = Eval(*e.args[0], batch, row, ctx);
      switch (e.fn) {
        case Builtin::kId:
          if (const auto* v = std::get_if<VertexId>(&a)) return PropertyValue(v->local);
          if (const auto* x = std::get_if<EdgeRef>(&a)) return PropertyValue(x->key.edge_id);
          return PropertyValue();
        case Builtin::kLabel: {
          const auto& catalog = ctx.engine->catalog();
          if (const auto* v = std::get_if<VertexId>(&a)) {
            return PropertyValue(catalog.Label(mem::LabelKind::kVertex, v->label).name);
          }
          if (const auto* x = std::get_if<EdgeRef>(&a)) {
            return PropertyValue(catalog.Label(mem::LabelKind::kEdge, x->key.edge_label).name);
          }
          return PropertyValue();
        }
        case Builtin::kVectorNorm: {
          const auto* v = VectorArg(AsValue(a, e.name), e.name);
          return v ? PropertyValue(vec::Norm(*v)) : PropertyValue();
        }
        case Builtin::kVectorDistance:
        case Builtin::kVectorSimilarity: {
          Datum b = Eval(*e.args[1], batch, row, ctx);
          const auto* x = VectorArg(AsValue(a, e.name), e.name);
          const auto* y = VectorArg(AsValue(b, e.name), e.name);
          if (x == nullptr || y == nullptr) return PropertyValue();
          if (e.fn == Builtin::kVectorDistance) return PropertyValue(VectorDistance(e.metric, *x, *y));
          return PropertyValue(vec::Score(e.metric, *x, *y));
        }
      }
      return PropertyValue();
    }
    case K::kList: {
      FloatVector out;
      out.reserve(e.args.size());
      for (const auto& arg : e.args) {
        const auto& v = AsValue(Eval(*arg, batch, row, ctx), "ARRAY");
        if (!v.is_numeric()) {
          Runtime(fmt::format("ARRAY elements must be numbers, got {}", ValueTypeName(v.type())));
        }
        out.push_back(static_cast<float>(v.as_number()));
      }
      return PropertyValue(std::move(out));
    }
  }
  return PropertyValue();
}

PropertyValue EvalConstant(const BoundExpr& e, const ExecContext& ctx) {
  static const RowBatch kEmpty = [] {
    RowBatch b;
    b.rows = 1;
    return b;
  }();
  Datum d = Eval(e, kEmpty, 0, ctx);
  auto* v = std::get_if<PropertyValue>(&d);
  if (v == nullptr) Runtime("expected a constant value");
  return std::move(*v);
}

}  // namespace arcforge::query
