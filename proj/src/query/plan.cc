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

#include "arcforge/query/plan.h"

#include <fmt/format.h>

#include <algorithm>

namespace arcforge::query {

std::string_view OpName(OpKind kind) {
  switch (kind) {
    case OpKind::kVertexScan: return "VertexScan";
    case OpKind::kVertexVectorScan: return "VertexVectorScan";
    case OpKind::kExpand: return "Expand";
    case OpKind::kVarLengthExpand: return "VarLengthExpand";
    case OpKind::kFilter: return "Filter";
    case OpKind::kProject: return "Project";
    case OpKind::kOrderBy: return "OrderBy";
    case OpKind::kLimit: return "Limit";
    case OpKind::kAggregate: return "Aggregate";
    case OpKind::kCallProcedure: return "CallProcedure";
    case OpKind::kCreate: return "Create";
    case OpKind::kCreateIndex: return "CreateIndex";
  }
  return "?";
}

bool BoundExpr::IsConstant() const {
  switch (kind) {
    case Kind::kConst:
    case Kind::kParam: return true;
    case Kind::kColumn:
    case Kind::kProperty: return false;
    default:
      return std::all_of(args.begin(), args.end(), [](const BoundPtr& a) { return a->IsConstant(); });
  }
}

std::string BoundExpr::ToString() const {
  switch (kind) {
    case Kind::kConst: return LiteralText(value);
    case Kind::kParam: return "$" + name;
    case Kind::kColumn: return column_name;
    case Kind::kProperty: return column_name + "." + name;
    case Kind::kBinary:
      return fmt::format("({} {} {})", args[0]->ToString(), BinaryOpSymbol(op), args[1]->ToString());
    case Kind::kUnary:
      switch (uop) {
        case UnaryOp::kNot: return "NOT " + args[0]->ToString();
        case UnaryOp::kNeg: return "-" + args[0]->ToString();
        case UnaryOp::kIsNull: return "(" + args[0]->ToString() + " IS NULL)";
        case UnaryOp::kIsNotNull: return "(" + args[0]->ToString() + " IS NOT NULL)";
      }
      return "?";
    case Kind::kBuiltin:
    case Kind::kList: {
      std::vector<std::string> parts;
      for (const auto& a : args) parts.push_back(a->ToString());
      if (kind == Kind::kList) return fmt::format("[{}]", fmt::join(parts, ", "));
      return fmt::format("{}({})", name, fmt::join(parts, ", "));
    }
  }
  return "?";
}

namespace {

std::string Node(const std::string& var, const std::string& label) {
  return label.empty() ? fmt::format("({})", var) : fmt::format("({}:{})", var, label);
}

std::string Rel(const ExpandArgs& x, bool var_length) {
  std::string inner = x.edge_var;
  if (!x.edge_label_name.empty()) inner += ":" + x.edge_label_name;
  if (var_length) inner += fmt::format("*{}..{}", x.min_hops, x.max_hops);
  std::string body = inner.empty() ? "" : "[" + inner + "]";
  switch (x.direction) {
    case RelDirection::kOut: return "-" + body + "->";
    case RelDirection::kIn: return "<-" + body + "-";
    case RelDirection::kBoth: return "-" + body + "-";
  }
  return body;
}

std::string Describe(const PlanOp& op) {
  switch (op.kind) {
    case OpKind::kVertexScan: {
      const auto& a = op.as<ScanArgs>();
      std::string s = a.label_name.empty() ? a.var : a.var + ":" + a.label_name;
      if (a.key) s += ", id=" + a.key->ToString();
      return s;
    }
    case OpKind::kVertexVectorScan: {
      const auto& a = op.as<VectorScanArgs>();
      std::string s = fmt::format("{}:{}, collection={}, field={}, metric={}, query={}, k={}", a.var,
                                  a.label_name, a.collection, a.field_name,
                                  vec::MetricName(a.metric), a.query->ToString(), a.k->ToString());
      if (!a.filter.empty()) {
        std::vector<std::string> terms;
        for (const auto& t : a.filter) {
          terms.push_back(fmt::format("{} {} {}", t.field, vec::CompareOpSymbol(t.op),
                                      t.value->ToString()));
        }
        s += fmt::format(", filter=[{}]", fmt::join(terms, " AND "));
      }
      return s;
    }
    case OpKind::kExpand:
    case OpKind::kVarLengthExpand: {
      const auto& a = op.as<ExpandArgs>();
      std::string s = Node(a.from_var, "") + Rel(a, op.kind == OpKind::kVarLengthExpand) +
                      Node(a.to_var, a.to_label_name);
      if (a.into) s += ", into";
      return s;
    }
    case OpKind::kFilter: return op.as<FilterArgs>().predicate->ToString();
    case OpKind::kProject: {
      std::vector<std::string> parts;
      for (const auto& [name, e] : op.as<ProjectArgs>().items) {
        std::string text = e->ToString();
        parts.push_back(text == name ? text : text + " AS " + name);
      }
      return fmt::format("{}", fmt::join(parts, ", "));
    }
    case OpKind::kOrderBy: {
      std::vector<std::string> parts;
      for (const auto& k : op.as<OrderByArgs>().keys) {
        parts.push_back(k.expr->ToString() + (k.ascending ? " ASC" : " DESC"));
      }
      return fmt::format("{}", fmt::join(parts, ", "));
    }
    case OpKind::kLimit: return op.as<LimitArgs>().count->ToString();
    case OpKind::kAggregate: {
      const auto& a = op.as<AggregateArgs>();
      std::vector<std::string> parts;
      for (size_t i = 0; i < a.outputs.size(); ++i) {
        auto [is_agg, idx] = a.outputs[i];
        std::string text = is_agg ? (a.counts[idx] ? "count(" + a.counts[idx]->ToString() + ")"
                                                   : std::string("count(*)"))
                                  : a.keys[idx]->ToString();
        parts.push_back(text == op.schema[i].name ? text : text + " AS " + op.schema[i].name);
      }
      return fmt::format("{}", fmt::join(parts, ", "));
    }
    case OpKind::kCallProcedure: {
      const auto& a = op.as<CallArgs>();
      std::vector<std::string> args, yields;
      for (const auto& e : a.args) args.push_back(e->ToString());
      for (const auto& c : op.schema) yields.push_back(c.name);
      return fmt::format("{}({}) YIELD {}", a.name, fmt::join(args, ", "), fmt::join(yields, ", "));
    }
    case OpKind::kCreate: {
      const auto& a = op.as<CreateArgs>();
      std::vector<std::string> parts;
      for (const auto& n : a.nodes) {
        if (n.exists) continue;
        std::string s = fmt::format("({}:{}", n.var, n.label_name);
        std::vector<std::string> props;
        if (n.id) props.push_back("id: " + n.id->ToString());
        for (size_t i = 0; i < n.props.size(); ++i) {
          props.push_back(n.prop_names[i] + ": " + n.props[i].second->ToString());
        }
        if (!props.empty()) s += fmt::format(" {{{}}}", fmt::join(props, ", "));
        parts.push_back(s + ")");
      }
      for (const auto& e : a.edges) {
        parts.push_back(fmt::format("({})-[{}:{}]->({})", a.nodes[e.src].var, e.var, e.label_name,
                                    a.nodes[e.dst].var));
      }
      return fmt::format("{}", fmt::join(parts, ", "));
    }
    case OpKind::kCreateIndex: {
      const auto& a = op.as<CreateIndexArgs>();
      return fmt::format("{} ON {}({}), dim={}, metric={}, m={}, ef_construction={}", a.name,
                         a.label_name, a.field_name, a.config.dimension,
                         vec::MetricName(a.config.metric), a.config.hnsw.m,
                         a.config.hnsw.ef_construction);
    }
  }
  return {};
}

}  // namespace

std::vector<const PlanOp*> Plan::Pipeline() const {
  std::vector<const PlanOp*> out;
  for (const PlanOp* op = root.get(); op != nullptr; op = op->input.get()) out.push_back(op);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<PlanOp*> Plan::Pipeline() {
  std::vector<PlanOp*> out;
  for (PlanOp* op = root.get(); op != nullptr; op = op->input.get()) out.push_back(op);
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Plan::ToString() const {
  std::string out;
  size_t depth = 0;
  for (const PlanOp* op = root.get(); op != nullptr; op = op->input.get(), ++depth) {
    out += fmt::format("{:{}}{}({})\n", "", depth * 2, OpName(op->kind), Describe(*op));
  }
  return out;
}

}  // namespace arcforge::query
