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

#include "arcforge/db/database.h"
#include "arcforge/query/planner.h"
#include "arcforge/vec/vector_store.h"

namespace arcforge::query {

namespace {

void Conjuncts(const BoundPtr& e, std::vector<BoundPtr>* out) {
  if (e->kind == BoundExpr::Kind::kBinary && e->op == BinaryOp::kAnd) {
    Conjuncts(e->args[0], out);
    Conjuncts(e->args[1], out);
  } else {
    out->push_back(e);
  }
}

std::optional<vec::CompareOp> ToCompareOp(BinaryOp op, bool flipped) {
  switch (op) {
    case BinaryOp::kEq: return vec::CompareOp::kEq;
    case BinaryOp::kLt: return flipped ? vec::CompareOp::kGt : vec::CompareOp::kLt;
    case BinaryOp::kLe: return flipped ? vec::CompareOp::kGe : vec::CompareOp::kLe;
    case BinaryOp::kGt: return flipped ? vec::CompareOp::kLt : vec::CompareOp::kGt;
    case BinaryOp::kGe: return flipped ? vec::CompareOp::kLe : vec::CompareOp::kGe;
    default: return std::nullopt;
  }
}

bool IsPayloadType(ValueType t) {
  return t == ValueType::kBool || t == ValueType::kInt || t == ValueType::kFloat ||
         t == ValueType::kText;
}

class VectorScanRewrite {
 public:
  explicit VectorScanRewrite(const PlanContext& ctx) : ctx_(ctx) {}

  /// Rewrites the chain rooted at `slot` if it is Limit <- OrderBy <-
  /// Filter* <- VertexScan over an indexed vector field.
  bool Apply(std::unique_ptr<PlanOp>& slot) {
    PlanOp* limit = slot.get();
    if (limit->kind != OpKind::kLimit) return false;
    PlanOp* order = limit->input.get();
    if (order == nullptr || order->kind != OpKind::kOrderBy) return false;
    std::vector<PlanOp*> filters;
    PlanOp* scan = order->input.get();
    while (scan != nullptr && scan->kind == OpKind::kFilter) {
      filters.push_back(scan);
      scan = scan->input.get();
    }
    if (scan == nullptr || scan->kind != OpKind::kVertexScan || scan->input != nullptr) return false;
    const auto& scan_args = scan->as<ScanArgs>();
    if (!scan_args.label || scan_args.key) return false;
    scan_col_ = scan->schema.size() - 1;
    label_ = *scan_args.label;

    const auto& keys = order->as<OrderByArgs>().keys;
    if (keys.size() != 1) return false;
    const BoundExpr& key = *keys[0].expr;
    if (key.kind != BoundExpr::Kind::kBuiltin) return false;
    bool distance = key.fn == Builtin::kVectorDistance;
    if (!distance && key.fn != Builtin::kVectorSimilarity) return false;
    if (keys[0].ascending != distance) return false;  // nearest first only
    const BoundPtr* prop = nullptr;
    const BoundPtr* query = nullptr;
    for (size_t i = 0; i < 2; ++i) {
      if (IsScanField(*key.args[i]) && key.args[1 - i]->IsConstant()) {
        prop = &key.args[i];
        query = &key.args[1 - i];
      }
    }
    if (prop == nullptr) return false;
    const auto& field = ctx_.catalog->Field(mem::LabelKind::kVertex, label_, *(*prop)->field);
    if (ctx_.db == nullptr || ctx_.vectors == nullptr) return false;
    auto collection = ctx_.db->BoundCollection(label_, field.id);
    if (!collection) return false;
    vec::Metric metric = ctx_.vectors->Get(*collection)->metric();
    if (metric != key.metric) return false;

    VectorScanArgs args;
    for (const PlanOp* f : filters) {
      std::vector<BoundPtr> terms;
      Conjuncts(f->as<FilterArgs>().predicate, &terms);
      for (const auto& t : terms) {
        auto pushed = Pushable(*t);
        if (!pushed) return false;  // a residual filter would cut into the top k
        args.filter.push_back(std::move(*pushed));
      }
    }
    args.var = scan_args.var;
    args.label = label_;
    args.label_name = scan_args.label_name;
    args.field_name = field.name;
    args.collection = *collection;
    args.metric = metric;
    args.query = *query;
    args.k = limit->as<LimitArgs>().count;

    auto op = std::make_unique<PlanOp>();
    op->kind = OpKind::kVertexVectorScan;
    op->schema = scan->schema;
    op->schema.push_back({"_score", ColumnKind::kValue, std::nullopt, true});
    op->args = std::move(args);
    slot = std::move(op);
    return true;
  }

 private:
  bool IsScanField(const BoundExpr& e) const {
    return e.kind == BoundExpr::Kind::kProperty && e.column == scan_col_ && e.field &&
           e.owner_kind == mem::LabelKind::kVertex;
  }

  std::optional<FilterTerm> Pushable(const BoundExpr& e) const {
    if (e.kind != BoundExpr::Kind::kBinary) return std::nullopt;
    for (size_t i = 0; i < 2; ++i) {
      const BoundExpr& side = *e.args[i];
      if (!IsScanField(side) || !e.args[1 - i]->IsConstant()) continue;
      auto op = ToCompareOp(e.op, i == 1);
      if (!op) return std::nullopt;
      const auto& field = ctx_.catalog->Field(mem::LabelKind::kVertex, label_, *side.field);
      if (!IsPayloadType(field.type)) return std::nullopt;
      return FilterTerm{field.name, *op, e.args[1 - i]};
    }
    return std::nullopt;
  }

  const PlanContext& ctx_;
  size_t scan_col_ = 0;
  LabelId label_ = 0;
};

}  // namespace

void Optimize(Plan& plan, const PlanContext& ctx) {
  VectorScanRewrite rewrite(ctx);
  for (std::unique_ptr<PlanOp>* slot = &plan.root; *slot; slot = &(*slot)->input) {
    if (rewrite.Apply(*slot)) break;
  }
}

}  // namespace arcforge::query
