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

#include "arcforge/query/ast.h"

#include <fmt/format.h>

namespace arcforge::query {

std::string_view BinaryOpSymbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::kOr: return "OR";
    case BinaryOp::kXor: return "XOR";
    case BinaryOp::kAnd: return "AND";
    case BinaryOp::kEq: return "=";
    case BinaryOp::kNeq: return "<>";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kMod: return "%";
  }
  return "?";
}

std::string LiteralText(const PropertyValue& v) {
  if (v.type() == ValueType::kText) return v.ToJson().dump();
  if (v.type() == ValueType::kFloat) {
    std::string s = v.ToString();
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
  }
  return v.ToString();
}

namespace {

std::string MapString(const PropertyMap& props) {
  std::string out = "{";
  for (size_t i = 0; i < props.size(); ++i) {
    if (i) out += ", ";
    out += fmt::format("{}: {}", props[i].first, props[i].second->ToString());
  }
  return out + "}";
}

std::string NodeString(const NodePattern& n) {
  std::string out = "(node " + (n.var.empty() ? std::string("_") : n.var);
  if (n.label) out += " :" + *n.label;
  if (!n.props.empty()) out += " " + MapString(n.props);
  return out + ")";
}

std::string RelString(const RelPattern& r) {
  static constexpr std::string_view kDir[] = {"->", "<-", "--"};
  std::string out = fmt::format("(rel {} {}", kDir[static_cast<int>(r.direction)],
                                r.var.empty() ? std::string("_") : r.var);
  if (r.label) out += " :" + *r.label;
  if (r.var_length) out += fmt::format(" *{}..{}", r.min_hops, r.max_hops);
  if (!r.props.empty()) out += " " + MapString(r.props);
  return out + ")";
}

std::string PathString(const PathPattern& p) {
  std::string out = "(path " + NodeString(p.nodes[0]);
  for (size_t i = 0; i < p.rels.size(); ++i) {
    out += " " + RelString(p.rels[i]) + " " + NodeString(p.nodes[i + 1]);
  }
  return out + ")";
}

std::string PatternsString(const std::vector<PathPattern>& patterns) {
  std::string out;
  for (const auto& p : patterns) out += " " + PathString(p);
  return out;
}

}  // namespace

std::string Expr::ToString() const {
  switch (kind) {
    case Kind::kLiteral: return LiteralText(value);
    case Kind::kParam: return "$" + name;
    case Kind::kVariable: return name;
    case Kind::kProperty: return fmt::format("(. {} {})", args[0]->ToString(), name);
    case Kind::kBinary:
      return fmt::format("({} {} {})", BinaryOpSymbol(op), args[0]->ToString(),
                         args[1]->ToString());
    case Kind::kUnary: {
      static constexpr std::string_view kNames[] = {"NOT", "NEG", "IS-NULL", "IS-NOT-NULL"};
      return fmt::format("({} {})", kNames[static_cast<int>(uop)], args[0]->ToString());
    }
    case Kind::kFunction: {
      std::string out = "(call " + name;
      if (star) out += " *";
      for (const auto& a : args) out += " " + a->ToString();
      return out + ")";
    }
    case Kind::kList: {
      std::string out = "[";
      for (size_t i = 0; i < args.size(); ++i) {
        if (i) out += " ";
        out += args[i]->ToString();
      }
      return out + "]";
    }
  }
  return "?";
}

std::string Query::ToString() const {
  std::string out = explain ? "(explain " : "(query";
  if (explain) out.pop_back();
  if (create_index) {
    out += fmt::format(" (create-vector-index {} {} {} {})", create_index->name,
                       create_index->label, create_index->field,
                       MapString(create_index->options));
  }
  if (call) {
    out += " (call " + call->procedure;
    for (const auto& a : call->args) out += " " + a->ToString();
    if (!call->yields.empty()) {
      out += " (yield";
      for (const auto& [col, alias] : call->yields) {
        out += col == alias ? " " + col : fmt::format(" {}:{}", col, alias);
      }
      out += ")";
    }
    out += ")";
  }
  if (match) {
    out += " (match" + PatternsString(match->patterns);
    if (match->where) out += " (where " + match->where->ToString() + ")";
    out += ")";
  }
  if (create) out += " (create" + PatternsString(create->patterns) + ")";
  if (ret) {
    out += " (return";
    for (const auto& item : ret->items) {
      out += " " + item.expr->ToString();
      if (item.explicit_alias) out += " AS " + item.alias;
    }
    if (!ret->order_by.empty()) {
      out += " (order-by";
      for (const auto& s : ret->order_by) {
        out += fmt::format(" {} {}", s.expr->ToString(), s.ascending ? "ASC" : "DESC");
      }
      out += ")";
    }
    if (ret->limit) out += " (limit " + ret->limit->ToString() + ")";
    out += ")";
  }
  return out + ")";
}

}  // namespace arcforge::query
