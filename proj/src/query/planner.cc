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

#include "arcforge/query/planner.h"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <set>

#include "arcforge/common/error.h"
#include "arcforge/db/database.h"
#include "arcforge/vec/vector_store.h"

namespace arcforge::query {

using mem::LabelKind;

Params ParamsFromJson(const Json& j) {
  Params out;
  if (j.is_null()) return out;
  if (!j.is_object()) Throw(ErrorCode::kInvalidArgument, "parameters must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    std::string name = k;
    if (!name.empty() && name[0] == '$') name.erase(0, 1);
    out[name] = ValueFromJson(v);
  }
  return out;
}

namespace {

[[noreturn]] void Semantic(const std::string& msg) { Throw(ErrorCode::kSemanticError, msg); }

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool IsCount(const Expr& e) {
  return e.kind == Expr::Kind::kFunction && Lower(e.name) == "count";
}

BoundPtr MakeConst(PropertyValue v) {
  auto b = std::make_shared<BoundExpr>();
  b->kind = BoundExpr::Kind::kConst;
  b->value = std::move(v);
  return b;
}

/// Procedure output columns.
struct ProcedureSpec {
  Procedure id;
  std::string name;
  size_t min_args;
  size_t max_args;
  std::vector<std::pair<std::string, ColumnKind>> columns;
};

const std::vector<ProcedureSpec>& Procedures() {
  static const std::vector<ProcedureSpec> kSpecs = {
      {Procedure::kPageRank, "pagerank", 0, 3,
       {{"vertex", ColumnKind::kVertex}, {"score", ColumnKind::kValue}}},
      {Procedure::kWcc, "wcc", 0, 0,
       {{"vertex", ColumnKind::kVertex}, {"component", ColumnKind::kVertex}}},
      {Procedure::kWriteBack, "writeback", 2, 5, {{"updated", ColumnKind::kValue}}},
      {Procedure::kVectorSearch, "vector.search", 3, 4,
       {{"vertex", ColumnKind::kVertex}, {"score", ColumnKind::kValue}}},
  };
  return kSpecs;
}

const ProcedureSpec* FindProcedure(const std::string& name) {
  std::string lower = Lower(name);
  for (const auto& spec : Procedures()) {
    if (spec.name == lower) return &spec;
  }
  return nullptr;
}

class Planner {
 public:
  explicit Planner(const PlanContext& ctx) : ctx_(ctx), catalog_(*ctx.catalog) {}

  Plan Build(const Query& q) {
    Plan plan;
    plan.mutates = Mutates(q);
    if (q.create_index) {
      CreateIndex(*q.create_index);
      plan.returns_rows = false;
      plan.root = std::move(top_);
      return plan;
    }
    if (q.call) Call(*q.call);
    if (q.match) {
      for (const auto& path : q.match->patterns) MatchPath(path);
      if (q.match->where) AddFilter(Bind(*q.match->where));
    }
    if (q.create) Create(*q.create);
    if (q.ret) {
      Return(*q.ret);
    } else if (!q.call || q.match || q.create) {
      plan.returns_rows = false;
    }
    plan.root = std::move(top_);
    return plan;
  }

 private:
  // Chain building ---------------------------------------------------------

  void Push(OpKind kind, OpArgs args, Schema schema) {
    auto op = std::make_unique<PlanOp>();
    op->kind = kind;
    op->args = std::move(args);
    op->schema = std::move(schema);
    op->input = std::move(top_);
    top_ = std::move(op);
  }

  void AddFilter(BoundPtr predicate) {
    if (!predicate) return;
    Push(OpKind::kFilter, FilterArgs{std::move(predicate)}, schema_);
  }

  static BoundPtr And(BoundPtr a, BoundPtr b) {
    if (!a) return b;
    auto e = std::make_shared<BoundExpr>();
    e->kind = BoundExpr::Kind::kBinary;
    e->op = BinaryOp::kAnd;
    e->args = {std::move(a), std::move(b)};
    return e;
  }

  size_t AddColumn(ColumnDef def) {
    schema_.push_back(def);
    if (!def.hidden) vars_[def.name] = schema_.size() - 1;
    return schema_.size() - 1;
  }

  std::string Anonymous() { return fmt::format("_anon{}", anon_++); }

  // Labels -----------------------------------------------------------------

  const mem::LabelDef& VertexLabel(const std::string& name) const {
    const auto* def = catalog_.FindLabel(LabelKind::kVertex, name);
    if (def == nullptr) Semantic(fmt::format("unknown vertex label '{}'", name));
    return *def;
  }
  const mem::LabelDef& EdgeLabel(const std::string& name) const {
    const auto* def = catalog_.FindLabel(LabelKind::kEdge, name);
    if (def == nullptr) Semantic(fmt::format("unknown edge label '{}'", name));
    return *def;
  }

  // Expressions ------------------------------------------------------------

  const PropertyValue* ParamValue(const std::string& name) const {
    if (ctx_.params == nullptr) return nullptr;
    auto it = ctx_.params->find(name);
    return it == ctx_.params->end() ? nullptr : &it->second;
  }

  /// Statically known vector length of an expression, if any.
  std::optional<size_t> VectorLength(const BoundExpr& e) const {
    if (e.kind == BoundExpr::Kind::kConst && e.value.type() == ValueType::kVector) {
      return e.value.as_vector().size();
    }
    if (e.kind == BoundExpr::Kind::kList) return e.args.size();
    if (e.kind == BoundExpr::Kind::kParam) {
      const auto* v = ParamValue(e.name);
      if (v != nullptr && v->type() == ValueType::kVector) return v->as_vector().size();
    }
    return std::nullopt;
  }

  /// Declared field of a property expression, if resolved.
  const mem::FieldDef* FieldOf(const BoundExpr& e) const {
    if (e.kind != BoundExpr::Kind::kProperty || !e.field || !e.owner_label) return nullptr;
    return &catalog_.Field(e.owner_kind, *e.owner_label, *e.field);
  }

  BoundPtr Bind(const Expr& e) {
    auto b = std::make_shared<BoundExpr>();
    switch (e.kind) {
      case Expr::Kind::kLiteral:
        b->kind = BoundExpr::Kind::kConst;
        b->value = e.value;
        return b;
      case Expr::Kind::kParam:
        b->kind = BoundExpr::Kind::kParam;
        b->name = e.name;
        return b;
      case Expr::Kind::kVariable: {
        if (path_vars_.contains(e.name)) {
          Semantic(fmt::format("variable-length relationship '{}' cannot be used in expressions",
                               e.name));
        }
        auto it = vars_.find(e.name);
        if (it == vars_.end()) Semantic(fmt::format("variable '{}' is not defined", e.name));
        b->kind = BoundExpr::Kind::kColumn;
        b->column = it->second;
        b->column_name = e.name;
        return b;
      }
      case Expr::Kind::kProperty: return BindProperty(e);
      case Expr::Kind::kBinary:
        b->kind = BoundExpr::Kind::kBinary;
        b->op = e.op;
        b->args = {Bind(*e.args[0]), Bind(*e.args[1])};
        return b;
      case Expr::Kind::kUnary:
        b->kind = BoundExpr::Kind::kUnary;
        b->uop = e.uop;
        b->args = {Bind(*e.args[0])};
        return b;
      case Expr::Kind::kFunction: return BindFunction(e);
      case Expr::Kind::kList: {
        b->kind = BoundExpr::Kind::kList;
        bool constant = true;
        FloatVector folded;
        for (const auto& a : e.args) {
          auto arg = Bind(*a);
          if (arg->kind == BoundExpr::Kind::kConst) {
            if (!arg->value.is_numeric()) Semantic("ARRAY elements must be numbers");
            folded.push_back(static_cast<float>(arg->value.as_number()));
          } else {
            constant = false;
          }
          b->args.push_back(std::move(arg));
        }
        if (constant) return MakeConst(PropertyValue(std::move(folded)));
        return b;
      }
    }
    Semantic("unsupported expression");
  }

  BoundPtr BindProperty(const Expr& e) {
    const Expr& owner = *e.args[0];
    if (owner.kind != Expr::Kind::kVariable) {
      Semantic(fmt::format("property '{}' must be read from a variable", e.name));
    }
    auto col = Bind(owner);
    const ColumnDef& def = schema_[col->column];
    auto b = std::make_shared<BoundExpr>();
    b->kind = BoundExpr::Kind::kProperty;
    b->column = col->column;
    b->column_name = owner.name;
    b->name = e.name;
    if (def.kind == ColumnKind::kValue) {
      Semantic(fmt::format("'{}' is not a vertex or edge", owner.name));
    }
    b->owner_kind = def.kind == ColumnKind::kVertex ? LabelKind::kVertex : LabelKind::kEdge;
    b->owner_label = def.label;
    if (b->owner_kind == LabelKind::kVertex && e.name == mem::Catalog::kIdField) {
      b->id_field = true;
      return b;
    }
    if (def.label) {
      const auto& label = catalog_.Label(b->owner_kind, *def.label);
      const auto* field = label.FindField(e.name);
      if (field == nullptr) {
        Semantic(fmt::format("label '{}' has no field '{}'", label.name, e.name));
      }
      b->field = field->id;
    }
    return b;
  }

  BoundPtr BindFunction(const Expr& e) {
    std::string name = Lower(e.name);
    if (name == "count") Semantic("count() is only allowed as a RETURN item");
    auto b = std::make_shared<BoundExpr>();
    b->kind = BoundExpr::Kind::kBuiltin;
    b->name = name;
    auto arity = [&](size_t lo, size_t hi) {
      if (e.star || e.args.size() < lo || e.args.size() > hi) {
        Semantic(fmt::format("wrong number of arguments to {}()", name));
      }
    };
    if (name == "id" || name == "label") {
      arity(1, 1);
      b->fn = name == "id" ? Builtin::kId : Builtin::kLabel;
      b->args = {Bind(*e.args[0])};
      if (b->args[0]->kind != BoundExpr::Kind::kColumn ||
          schema_[b->args[0]->column].kind == ColumnKind::kValue) {
        Semantic(fmt::format("{}() takes a vertex or edge", name));
      }
      return b;
    }
    if (name == "vector_norm") {
      arity(1, 1);
      b->fn = Builtin::kVectorNorm;
      b->args = {Bind(*e.args[0])};
      CheckVectorOperand(*b->args[0], name);
      return b;
    }
    if (name == "vector_distance" || name == "vector_similarity") {
      arity(2, 3);
      b->fn = name == "vector_distance" ? Builtin::kVectorDistance : Builtin::kVectorSimilarity;
      b->args = {Bind(*e.args[0]), Bind(*e.args[1])};
      CheckVectorOperand(*b->args[0], name);
      CheckVectorOperand(*b->args[1], name);
      std::optional<uint32_t> dim;
      for (const auto& a : b->args) {
        if (const auto* f = FieldOf(*a)) dim = f->dimension;
      }
      for (const auto& a : b->args) {
        auto len = VectorLength(*a);
        if (dim && len && *len != *dim) {
          Semantic(fmt::format("{}: vector of length {} against a {}-d field", name, *len, *dim));
        }
      }
      if (e.args.size() == 3) {
        auto metric = Bind(*e.args[2]);
        if (metric->kind != BoundExpr::Kind::kConst || metric->value.type() != ValueType::kText) {
          Semantic(fmt::format("{}: metric must be a string literal", name));
        }
        try {
          b->metric = vec::ParseMetric(metric->value.as_text());
        } catch (const Error& err) {
          Semantic(err.what());
        }
        b->args.push_back(metric);
      } else {
        b->metric = DefaultMetric(*b->args[0]).value_or(
            DefaultMetric(*b->args[1]).value_or(vec::Metric::kEuclidean));
      }
      return b;
    }
    Semantic(fmt::format("unknown function '{}'", e.name));
  }

  void CheckVectorOperand(const BoundExpr& e, const std::string& fn) const {
    if (const auto* f = FieldOf(e); f != nullptr && f->type != ValueType::kVector) {
      Semantic(fmt::format("{}: field '{}' is {}, not a vector", fn, f->name,
                           ValueTypeName(f->type)));
    }
    if (e.kind == BoundExpr::Kind::kConst && !e.value.is_null() &&
        e.value.type() != ValueType::kVector) {
      Semantic(fmt::format("{}: expected a vector, got {}", fn, ValueTypeName(e.value.type())));
    }
  }

  /// Metric of the vector index on a property's field, if one exists.
  std::optional<vec::Metric> DefaultMetric(const BoundExpr& e) const {
    if (ctx_.db == nullptr || ctx_.vectors == nullptr) return std::nullopt;
    if (e.kind != BoundExpr::Kind::kProperty || !e.field || !e.owner_label ||
        e.owner_kind != LabelKind::kVertex) {
      return std::nullopt;
    }
    auto coll = ctx_.db->BoundCollection(*e.owner_label, *e.field);
    if (!coll) return std::nullopt;
    return ctx_.vectors->Get(*coll)->metric();
  }

  /// `var.key = value` for every entry of a pattern property map.
  BoundPtr PropertyPredicate(const std::string& var, const PropertyMap& props) {
    BoundPtr pred;
    for (const auto& [key, value] : props) {
      auto owner = std::make_shared<Expr>();
      owner->kind = Expr::Kind::kVariable;
      owner->name = var;
      Expr prop;
      prop.kind = Expr::Kind::kProperty;
      prop.name = key;
      prop.args = {owner};
      auto eq = std::make_shared<BoundExpr>();
      eq->kind = BoundExpr::Kind::kBinary;
      eq->op = BinaryOp::kEq;
      eq->args = {BindProperty(prop), Bind(*value)};
      pred = And(pred, eq);
    }
    return pred;
  }

  // MATCH ------------------------------------------------------------------

  /// Binds a node that is already in scope; returns its column.
  size_t ReuseNode(const NodePattern& n) {
    size_t col = vars_.at(n.var);
    const ColumnDef& def = schema_[col];
    if (def.kind != ColumnKind::kVertex) Semantic(fmt::format("'{}' is not a vertex", n.var));
    if (n.label) {
      const auto& label = VertexLabel(*n.label);
      if (def.label && *def.label != label.id) {
        Semantic(fmt::format("variable '{}' cannot have two labels", n.var));
      }
      if (!def.label) {
        auto lbl = std::make_shared<BoundExpr>();
        lbl->kind = BoundExpr::Kind::kBuiltin;
        lbl->fn = Builtin::kLabel;
        lbl->name = "label";
        auto ref = std::make_shared<BoundExpr>();
        ref->kind = BoundExpr::Kind::kColumn;
        ref->column = col;
        ref->column_name = n.var;
        lbl->args = {ref};
        auto eq = std::make_shared<BoundExpr>();
        eq->kind = BoundExpr::Kind::kBinary;
        eq->op = BinaryOp::kEq;
        eq->args = {lbl, MakeConst(PropertyValue(label.name))};
        AddFilter(eq);
      }
    }
    return col;
  }

  void CheckFresh(const std::string& var) const {
    if (path_vars_.contains(var)) Semantic(fmt::format("variable '{}' is already defined", var));
  }

  void MatchPath(const PathPattern& path) {
    const NodePattern& first = path.nodes[0];
    size_t current;
    if (!first.var.empty() && vars_.contains(first.var)) {
      current = ReuseNode(first);
      AddFilter(PropertyPredicate(first.var, first.props));
    } else {
      if (!first.var.empty()) CheckFresh(first.var);
      ScanArgs scan;
      scan.var = first.var.empty() ? Anonymous() : first.var;
      PropertyMap rest;
      if (first.label) {
        const auto& label = VertexLabel(*first.label);
        scan.label = label.id;
        scan.label_name = label.name;
      }
      for (const auto& [key, value] : first.props) {
        if (scan.label && !scan.key && key == mem::Catalog::kIdField && top_ == nullptr) {
          auto bound = Bind(*value);
          if (bound->IsConstant()) {
            scan.key = bound;
            continue;
          }
        }
        rest.emplace_back(key, value);
      }
      // A scan below another producer multiplies its rows (cartesian product).
      current = AddColumn({scan.var, ColumnKind::kVertex, scan.label, first.var.empty()});
      Push(OpKind::kVertexScan, std::move(scan), schema_);
      AddFilter(PropertyPredicate(schema_[current].name, rest));
    }

    for (size_t i = 0; i < path.rels.size(); ++i) {
      const RelPattern& rel = path.rels[i];
      const NodePattern& next = path.nodes[i + 1];
      ExpandArgs x;
      x.from = current;
      x.from_var = schema_[current].name;
      x.direction = rel.direction;
      x.min_hops = rel.min_hops;
      x.max_hops = rel.max_hops;
      if (rel.label) {
        const auto& label = EdgeLabel(*rel.label);
        x.edge_label = label.id;
        x.edge_label_name = label.name;
      }
      if (!rel.var.empty() && (vars_.contains(rel.var) || path_vars_.contains(rel.var))) {
        Semantic(fmt::format("relationship variable '{}' is already defined", rel.var));
      }
      if (rel.var_length) {
        if (!rel.props.empty()) Semantic("variable-length relationships cannot carry properties");
        if (!rel.var.empty()) path_vars_.insert(rel.var);
        x.edge_var = rel.var;
      } else if (!rel.var.empty() || !rel.props.empty()) {
        x.bind_edge = true;
        x.edge_var = rel.var.empty() ? Anonymous() : rel.var;
      }
      if (next.label) {
        const auto& label = VertexLabel(*next.label);
        x.to_label = label.id;
        x.to_label_name = label.name;
      }
      bool reuse = !next.var.empty() && vars_.contains(next.var);
      if (reuse) {
        size_t col = vars_.at(next.var);
        if (schema_[col].kind != ColumnKind::kVertex) {
          Semantic(fmt::format("'{}' is not a vertex", next.var));
        }
        if (x.to_label && schema_[col].label && *schema_[col].label != *x.to_label) {
          Semantic(fmt::format("variable '{}' cannot have two labels", next.var));
        }
        x.into = col;
        x.to_var = next.var;
      } else {
        if (!next.var.empty()) CheckFresh(next.var);
        x.to_var = next.var.empty() ? Anonymous() : next.var;
      }
      size_t edge_col = 0;
      if (x.bind_edge) {
        edge_col = AddColumn({x.edge_var, ColumnKind::kEdge, x.edge_label, rel.var.empty()});
      }
      current = reuse ? *x.into
                      : AddColumn({x.to_var, ColumnKind::kVertex, x.to_label, next.var.empty()});
      Push(rel.var_length ? OpKind::kVarLengthExpand : OpKind::kExpand, std::move(x), schema_);
      if (!rel.props.empty()) AddFilter(PropertyPredicate(schema_[edge_col].name, rel.props));
      AddFilter(PropertyPredicate(schema_[current].name, next.props));
    }
  }

  // CALL -------------------------------------------------------------------

  void Call(const CallClause& c) {
    const auto* spec = FindProcedure(c.procedure);
    if (spec == nullptr) Semantic(fmt::format("unknown procedure '{}'", c.procedure));
    if (c.args.size() < spec->min_args || c.args.size() > spec->max_args) {
      Semantic(fmt::format("{}() takes {} to {} arguments, got {}", spec->name, spec->min_args,
                           spec->max_args, c.args.size()));
    }
    CallArgs args;
    args.procedure = spec->id;
    args.name = spec->name;
    for (const auto& a : c.args) {
      auto b = Bind(*a);
      if (!b->IsConstant()) Semantic(fmt::format("{}() arguments must be constants", spec->name));
      args.args.push_back(std::move(b));
    }
    auto text_arg = [&](size_t i, const char* what) {
      const auto& a = *args.args[i];
      if (a.kind == BoundExpr::Kind::kConst && a.value.type() != ValueType::kText) {
        Semantic(fmt::format("{}(): {} must be a string", spec->name, what));
      }
    };
    std::optional<LabelId> result_label;
    if (spec->id == Procedure::kWriteBack) {
      text_arg(0, "the procedure name");
      text_arg(1, "the field name");
    } else if (spec->id == Procedure::kVectorSearch) {
      text_arg(0, "the collection name");
      const auto& name = *args.args[0];
      if (name.kind == BoundExpr::Kind::kConst && ctx_.db != nullptr) {
        for (const auto& [binding, coll] : ctx_.db->Bindings()) {
          if (coll == name.value.as_text()) result_label = binding.label;
        }
      }
    }
    std::vector<std::pair<std::string, std::string>> yields = c.yields;
    if (yields.empty()) {
      for (const auto& [col, kind] : spec->columns) yields.emplace_back(col, col);
    }
    for (const auto& [col, alias] : yields) {
      auto it = std::find_if(spec->columns.begin(), spec->columns.end(),
                             [&](const auto& p) { return p.first == col; });
      if (it == spec->columns.end()) {
        Semantic(fmt::format("{}() has no output column '{}'", spec->name, col));
      }
      if (vars_.contains(alias)) Semantic(fmt::format("variable '{}' is already defined", alias));
      args.yields.push_back(static_cast<size_t>(it - spec->columns.begin()));
      std::optional<LabelId> label;
      if (it->first == "vertex") label = result_label;
      AddColumn({alias, it->second, label, false});
    }
    Push(OpKind::kCallProcedure, std::move(args), schema_);
  }

  // CREATE -----------------------------------------------------------------

  std::vector<std::pair<FieldId, BoundPtr>> CreateProps(LabelKind kind, const mem::LabelDef& label,
                                                        const PropertyMap& props,
                                                        std::vector<std::string>* names) {
    std::vector<std::pair<FieldId, BoundPtr>> out;
    for (const auto& [key, value] : props) {
      const auto* field = label.FindField(key);
      if (field == nullptr) {
        Semantic(fmt::format("label '{}' has no field '{}'", label.name, key));
      }
      auto b = Bind(*value);
      if (field->type == ValueType::kVector) {
        if (auto len = VectorLength(*b); len && *len != field->dimension) {
          Semantic(fmt::format("field '{}' holds {}-d vectors, got {}", key, field->dimension, *len));
        }
      }
      out.emplace_back(field->id, std::move(b));
      names->push_back(key);
      (void)kind;
    }
    return out;
  }

  void Create(const CreateClause& c) {
    CreateArgs args;
    std::map<std::string, size_t> created;  // var -> node index
    auto node_index = [&](const NodePattern& n) -> size_t {
      if (!n.var.empty()) {
        if (auto it = created.find(n.var); it != created.end()) {
          if (n.label || !n.props.empty()) {
            Semantic(fmt::format("variable '{}' is already defined", n.var));
          }
          return it->second;
        }
      }
      CreateNode node;
      node.var = n.var;
      if (!n.var.empty() && vars_.contains(n.var)) {
        if (n.label || !n.props.empty()) {
          Semantic(fmt::format("variable '{}' is already bound; CREATE cannot redefine it", n.var));
        }
        node.exists = true;
        node.column = ReuseNode(n);
      } else {
        if (!n.var.empty()) CheckFresh(n.var);
        if (!n.label) Semantic("CREATE needs a label for every new vertex");
        const auto& label = VertexLabel(*n.label);
        node.label = label.id;
        node.label_name = label.name;
        PropertyMap rest;
        for (const auto& [key, value] : n.props) {
          if (key == mem::Catalog::kIdField && !node.id) {
            node.id = Bind(*value);
          } else {
            rest.emplace_back(key, value);
          }
        }
        node.props = CreateProps(LabelKind::kVertex, label, rest, &node.prop_names);
        std::string name = n.var.empty() ? Anonymous() : n.var;
        node.column = AddColumn({name, ColumnKind::kVertex, label.id, n.var.empty()});
      }
      args.nodes.push_back(std::move(node));
      size_t index = args.nodes.size() - 1;
      if (!n.var.empty()) created[n.var] = index;
      return index;
    };
    for (const auto& path : c.patterns) {
      size_t prev = node_index(path.nodes[0]);
      for (size_t i = 0; i < path.rels.size(); ++i) {
        const RelPattern& rel = path.rels[i];
        size_t next = node_index(path.nodes[i + 1]);
        if (rel.var_length) Semantic("CREATE cannot use variable-length relationships");
        if (rel.direction == RelDirection::kBoth) Semantic("CREATE needs a directed relationship");
        if (!rel.label) Semantic("CREATE needs a label for every new relationship");
        const auto& label = EdgeLabel(*rel.label);
        CreateEdge edge;
        edge.label = label.id;
        edge.label_name = label.name;
        edge.src = rel.direction == RelDirection::kOut ? prev : next;
        edge.dst = rel.direction == RelDirection::kOut ? next : prev;
        edge.props = CreateProps(LabelKind::kEdge, label, rel.props, &edge.prop_names);
        if (!rel.var.empty()) {
          if (vars_.contains(rel.var) || created.contains(rel.var)) {
            Semantic(fmt::format("variable '{}' is already defined", rel.var));
          }
          edge.var = rel.var;
          edge.column = AddColumn({rel.var, ColumnKind::kEdge, label.id, false});
        }
        args.edges.push_back(std::move(edge));
        prev = next;
      }
    }
    Push(OpKind::kCreate, std::move(args), schema_);
  }

  void CreateIndex(const CreateIndexStatement& s) {
    const auto& label = VertexLabel(s.label);
    const auto* field = label.FindField(s.field);
    if (field == nullptr) Semantic(fmt::format("label '{}' has no field '{}'", label.name, s.field));
    if (field->type != ValueType::kVector) {
      Semantic(fmt::format("field '{}' is {}, not a vector", s.field, ValueTypeName(field->type)));
    }
    CreateIndexArgs args;
    args.name = s.name;
    args.label = label.id;
    args.field = field->id;
    args.label_name = label.name;
    args.field_name = field->name;
    args.config.dimension = field->dimension;
    std::set<std::string> seen;
    for (const auto& [key, expr] : s.options) {
      std::string k = Lower(key);
      if (!seen.insert(k).second) Semantic(fmt::format("option '{}' given twice", key));
      auto b = Bind(*expr);
      if (b->kind != BoundExpr::Kind::kConst) Semantic(fmt::format("option '{}' must be a literal", key));
      const PropertyValue& v = b->value;
      auto positive = [&]() -> uint64_t {
        if (v.type() != ValueType::kInt || v.as_int() <= 0) {
          Semantic(fmt::format("option '{}' must be a positive integer", key));
        }
        return static_cast<uint64_t>(v.as_int());
      };
      if (k == "dim" || k == "dimension") {
        if (positive() != field->dimension) {
          Semantic(fmt::format("dim {} does not match field '{}' ({}-d)", v.as_int(), field->name,
                               field->dimension));
        }
      } else if (k == "metric") {
        if (v.type() != ValueType::kText) Semantic("option 'metric' must be a string");
        try {
          args.config.metric = vec::ParseMetric(v.as_text());
        } catch (const Error& err) {
          Semantic(err.what());
        }
      } else if (k == "m") {
        args.config.hnsw.m = static_cast<uint32_t>(positive());
      } else if (k == "ef_construction") {
        args.config.hnsw.ef_construction = static_cast<uint32_t>(positive());
      } else if (k == "seal_threshold") {
        args.config.seal_threshold = positive();
      } else {
        Semantic(fmt::format("unknown index option '{}'", key));
      }
    }
    Push(OpKind::kCreateIndex, std::move(args), schema_);
  }

  // RETURN -----------------------------------------------------------------

  ColumnDef OutputColumn(const std::string& name, const BoundExpr& e) const {
    if (e.kind == BoundExpr::Kind::kColumn) {
      const ColumnDef& src = schema_[e.column];
      return {name, src.kind, src.label, false};
    }
    return {name, ColumnKind::kValue, std::nullopt, false};
  }

  BoundPtr BindLimit(const ReturnClause& r) {
    auto count = Bind(*r.limit);
    if (count->kind == BoundExpr::Kind::kConst &&
        (count->value.type() != ValueType::kInt || count->value.as_int() < 0)) {
      Semantic("LIMIT must be a non-negative integer");
    }
    return count;
  }

  /// ORDER BY may name a RETURN alias or repeat a RETURN expression.
  const Expr& ResolveSortExpr(const ReturnClause& r, const Expr& e) const {
    if (e.kind == Expr::Kind::kVariable) {
      for (const auto& item : r.items) {
        if (item.alias == e.name && !(item.expr->kind == Expr::Kind::kVariable &&
                                      item.expr->name == e.name)) {
          return *item.expr;
        }
      }
    }
    return e;
  }

  void Return(const ReturnClause& r) {
    bool aggregate = std::any_of(r.items.begin(), r.items.end(),
                                 [](const ReturnItem& i) { return IsCount(*i.expr); });
    if (aggregate) {
      ReturnAggregate(r);
      return;
    }
    std::vector<std::pair<std::string, BoundPtr>> items;
    Schema out;
    for (const auto& item : r.items) {
      auto b = Bind(*item.expr);
      out.push_back(OutputColumn(item.alias, *b));
      items.emplace_back(item.alias, std::move(b));
    }
    if (!r.order_by.empty()) {
      OrderByArgs order;
      for (const auto& s : r.order_by) {
        order.keys.push_back({Bind(ResolveSortExpr(r, *s.expr)), s.ascending});
      }
      Push(OpKind::kOrderBy, std::move(order), schema_);
      if (r.limit) Push(OpKind::kLimit, LimitArgs{BindLimit(r)}, schema_);
      schema_ = out;
      Push(OpKind::kProject, ProjectArgs{std::move(items)}, schema_);
    } else {
      schema_ = out;
      Push(OpKind::kProject, ProjectArgs{std::move(items)}, schema_);
      if (r.limit) Push(OpKind::kLimit, LimitArgs{BindLimit(r)}, schema_);
    }
    vars_.clear();
  }

  void ReturnAggregate(const ReturnClause& r) {
    AggregateArgs agg;
    Schema out;
    for (const auto& item : r.items) {
      if (IsCount(*item.expr)) {
        const Expr& e = *item.expr;
        if (!e.star && e.args.size() != 1) Semantic("count() takes one argument or *");
        agg.counts.push_back(e.star ? nullptr : Bind(*e.args[0]));
        agg.outputs.emplace_back(true, agg.counts.size() - 1);
        out.push_back({item.alias, ColumnKind::kValue, std::nullopt, false});
      } else {
        auto b = Bind(*item.expr);
        out.push_back(OutputColumn(item.alias, *b));
        agg.keys.push_back(std::move(b));
        agg.outputs.emplace_back(false, agg.keys.size() - 1);
      }
    }
    schema_ = out;
    vars_.clear();
    path_vars_.clear();
    for (size_t i = 0; i < schema_.size(); ++i) vars_[schema_[i].name] = i;
    Push(OpKind::kAggregate, std::move(agg), schema_);
    if (!r.order_by.empty()) {
      OrderByArgs order;
      for (const auto& s : r.order_by) {
        // Sorting after aggregation sees the output columns; a repeated
        // RETURN expression refers to its column.
        const Expr* e = s.expr.get();
        std::optional<size_t> same;
        for (size_t i = 0; i < r.items.size(); ++i) {
          if (r.items[i].expr->ToString() == e->ToString()) same = i;
        }
        if (same) {
          auto ref = std::make_shared<BoundExpr>();
          ref->kind = BoundExpr::Kind::kColumn;
          ref->column = *same;
          ref->column_name = schema_[*same].name;
          order.keys.push_back({ref, s.ascending});
        } else {
          order.keys.push_back({Bind(*e), s.ascending});
        }
      }
      Push(OpKind::kOrderBy, std::move(order), schema_);
    }
    if (r.limit) Push(OpKind::kLimit, LimitArgs{BindLimit(r)}, schema_);
  }

  const PlanContext& ctx_;
  const mem::Catalog& catalog_;
  std::unique_ptr<PlanOp> top_;
  Schema schema_;
  std::map<std::string, size_t> vars_;
  std::set<std::string> path_vars_;
  size_t anon_ = 0;
};

}  // namespace

bool Mutates(const Query& q) {
  if (q.create_index || q.create) return true;
  if (q.call) {
    const auto* spec = FindProcedure(q.call->procedure);
    return spec != nullptr && spec->id == Procedure::kWriteBack;
  }
  return false;
}

Plan BuildPlan(const Query& query, const PlanContext& ctx) { return Planner(ctx).Build(query); }

}  // namespace arcforge::query
