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

#include "arcforge/query/executor.h"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

#include "arcforge/analytics/procedures.h"
#include "arcforge/common/error.h"
#include "arcforge/db/database.h"
#include "arcforge/mem/mem_engine.h"
#include "arcforge/vec/vector_store.h"

namespace arcforge::query {

namespace {

[[noreturn]] void Runtime(const std::string& msg) { Throw(ErrorCode::kRuntimeError, msg); }

/// Physical operator. Receives batches from its producer and pushes its own
/// output to `next_`.
class Op {
 public:
  Op(const PlanOp& plan, OperatorStats* stats, const ExecContext& ctx)
      : plan_(plan), stats_(stats), ctx_(ctx), out_(RowBatch::ForSchema(plan.schema)) {}
  virtual ~Op() = default;

  void Connect(Op* next) { next_ = next; }

  /// Returns false once no further input is wanted.
  bool Push(const RowBatch& in) {
    if (stopped_) return false;
    stats_->rows_in += in.rows;
    return Consume(in) && !stopped_;
  }

  /// The producer is exhausted.
  virtual void Finish() {
    Flush();
    if (next_ != nullptr) next_->Finish();
  }

 protected:
  virtual bool Consume(const RowBatch& in) = 0;

  /// Counts the row just written to out_; ships the batch when it is full.
  bool EndRow() {
    ++out_.rows;
    if (out_.rows >= ctx_.options.batch_size) return Flush();
    return true;
  }

  bool Flush() {
    if (stopped_ || out_.rows == 0) return !stopped_;
    stats_->rows_out += out_.rows;
    ++stats_->batches_out;
    bool more = next_->Push(out_);
    out_.Clear();
    if (!more) stopped_ = true;
    return more;
  }

  db::Writer& writer() const {
    if (ctx_.writer == nullptr) Runtime("statement needs write access");
    return *ctx_.writer;
  }

  const PlanOp& plan_;
  OperatorStats* stats_;
  const ExecContext& ctx_;
  RowBatch out_;
  Op* next_ = nullptr;
  bool stopped_ = false;
};

class SinkOp : public Op {
 public:
  SinkOp(const PlanOp& plan, OperatorStats* stats, const ExecContext& ctx, bool keep,
         std::vector<std::vector<Datum>>* rows)
      : Op(plan, stats, ctx), keep_(keep), rows_(rows) {
    for (size_t i = 0; i < plan.schema.size(); ++i) {
      if (!plan.schema[i].hidden) visible_.push_back(i);
    }
  }
  void Finish() override {}

 protected:
  bool Consume(const RowBatch& in) override {
    if (!keep_) return true;
    for (size_t r = 0; r < in.rows; ++r) {
      std::vector<Datum> row;
      row.reserve(visible_.size());
      for (size_t c : visible_) row.push_back(in.columns[c].Get(r));
      rows_->push_back(std::move(row));
    }
    return true;
  }

 private:
  bool keep_;
  std::vector<std::vector<Datum>>* rows_;
  std::vector<size_t> visible_;
};

class VertexScanOp : public Op {
 public:
  using Op::Op;

 protected:
  bool Consume(const RowBatch& in) override {
    const auto& a = plan_.as<ScanArgs>();
    const auto& topology = ctx_.engine->topology();
    for (size_t r = 0; r < in.rows; ++r) {
      auto emit = [&](const VertexId& v) {
        out_.CopyPrefix(in, r);
        out_.columns.back().PushVertex(v);
        return EndRow();
      };
      if (a.key) {
        auto key = EvalConstant(*a.key, ctx_);
        if (key.is_null()) continue;
        if (key.type() != ValueType::kInt) {
          Runtime(fmt::format("vertex id must be an integer, got {}", ValueTypeName(key.type())));
        }
        VertexId v{*a.label, static_cast<uint64_t>(key.as_int())};
        if (key.as_int() >= 0 && topology.HasVertex(v) && !emit(v)) return false;
        continue;
      }
      bool more = true;
      topology.ForEachVertex(a.label, [&](const VertexId& v) { return more = emit(v); });
      if (!more) return false;
    }
    return true;
  }
};

class VertexVectorScanOp : public Op {
 public:
  using Op::Op;

 protected:
  bool Consume(const RowBatch& in) override {
    const auto& a = plan_.as<VectorScanArgs>();
    auto query = EvalConstant(*a.query, ctx_);
    if (query.type() != ValueType::kVector) {
      Runtime(fmt::format("vector search needs a vector query, got {}", ValueTypeName(query.type())));
    }
    auto k = EvalConstant(*a.k, ctx_);
    if (k.type() != ValueType::kInt || k.as_int() < 0) Runtime("LIMIT must be a non-negative integer");
    vec::PayloadFilter filter;
    for (const auto& t : a.filter) filter.terms.push_back({t.field, t.op, EvalConstant(*t.value, ctx_)});
    if (k.as_int() == 0) return true;
    auto hits = ctx_.vectors->Get(a.collection)
                    ->Search(query.as_vector(), static_cast<size_t>(k.as_int()),
                             ctx_.options.ef_search, filter);
    size_t n = out_.columns.size();
    for (size_t r = 0; r < in.rows; ++r) {
      for (const auto& hit : hits) {
        out_.CopyPrefix(in, r);
        out_.columns[n - 2].PushVertex(hit.key);
        out_.columns[n - 1].PushValue(PropertyValue(hit.score));
        if (!EndRow()) return false;
      }
    }
    return true;
  }
};

class ExpandOp : public Op {
 public:
  using Op::Op;

 protected:
  bool Consume(const RowBatch& in) override {
    const auto& a = plan_.as<ExpandArgs>();
    const size_t base = in.columns.size();
    for (size_t r = 0; r < in.rows; ++r) {
      const VertexId& v = in.columns[a.from].vertex(r);
      std::optional<VertexId> target;
      if (a.into) target = in.columns[*a.into].vertex(r);
      if (!Walk(in, r, base, v, target, 0)) return false;
    }
    return true;
  }

 private:
  bool Matches(const VertexId& nb, const std::optional<VertexId>& target) const {
    const auto& a = plan_.as<ExpandArgs>();
    if (a.to_label && nb.label != *a.to_label) return false;
    return !target || nb == *target;
  }

  /// Depth-first walk over paths of min..max hops from v; one output row per
  /// path ending in a matching vertex.
  bool Walk(const RowBatch& in, size_t r, size_t base, const VertexId& v,
            const std::optional<VertexId>& target, uint32_t depth) {
    const auto& a = plan_.as<ExpandArgs>();
    const auto& topology = ctx_.engine->topology();
    bool more = true;
    for (Direction d : {Direction::kOut, Direction::kIn}) {
      if ((d == Direction::kOut && a.direction == RelDirection::kIn) ||
          (d == Direction::kIn && a.direction == RelDirection::kOut)) {
        continue;
      }
      topology.ForEachNeighbor(v, d, a.edge_label, [&](const EdgeKey& key) {
        VertexId nb = key.neighbor();
        uint32_t hops = depth + 1;
        if (hops >= a.min_hops && Matches(nb, target)) {
          out_.CopyPrefix(in, r);
          size_t c = base;
          if (a.bind_edge) {
            EdgeRef e = d == Direction::kOut ? EdgeRef{v, key}
                                             : EdgeRef{nb, EdgeKey(key.edge_label, v, key.edge_id)};
            out_.columns[c++].PushEdge(e);
          }
          if (!a.into) out_.columns[c].PushVertex(nb);
          if (!EndRow()) return more = false;
        }
        if (hops < a.max_hops && !Walk(in, r, base, nb, target, hops)) return more = false;
        return true;
      });
      if (!more) return false;
    }
    return true;
  }
};

class FilterOp : public Op {
 public:
  using Op::Op;

 protected:
  bool Consume(const RowBatch& in) override {
    const auto& pred = *plan_.as<FilterArgs>().predicate;
    for (size_t r = 0; r < in.rows; ++r) {
      Datum d = Eval(pred, in, r, ctx_);
      const auto* v = std::get_if<PropertyValue>(&d);
      if (v == nullptr || v->is_null()) continue;
      if (v->type() != ValueType::kBool) {
        Runtime(fmt::format("WHERE needs a boolean, got {}", ValueTypeName(v->type())));
      }
      if (!v->as_bool()) continue;
      out_.CopyPrefix(in, r);
      if (!EndRow()) return false;
    }
    return true;
  }
};

class ProjectOp : public Op {
 public:
  using Op::Op;

 protected:
  bool Consume(const RowBatch& in) override {
    const auto& items = plan_.as<ProjectArgs>().items;
    for (size_t r = 0; r < in.rows; ++r) {
      for (size_t i = 0; i < items.size(); ++i) out_.columns[i].Push(Eval(*items[i].second, in, r, ctx_));
      if (!EndRow()) return false;
    }
    return true;
  }
};

class LimitOp : public Op {
 public:
  using Op::Op;

 protected:
  bool Consume(const RowBatch& in) override {
    if (!remaining_) {
      auto count = EvalConstant(*plan_.as<LimitArgs>().count, ctx_);
      if (count.type() != ValueType::kInt || count.as_int() < 0) {
        Runtime("LIMIT must be a non-negative integer");
      }
      remaining_ = static_cast<uint64_t>(count.as_int());
    }
    for (size_t r = 0; r < in.rows && *remaining_ > 0; ++r) {
      out_.CopyPrefix(in, r);
      --*remaining_;
      if (!EndRow()) return false;
    }
    if (*remaining_ == 0) {
      // Hand over what we have, then tell producers to stop.
      Flush();
      stopped_ = true;
      return false;
    }
    return true;
  }

 private:
  std::optional<uint64_t> remaining_;
};

/// Null sorts last in both directions.
int CompareSortKey(const Datum& a, const Datum& b, bool ascending) {
  bool na = IsNull(a), nb = IsNull(b);
  if (na || nb) return na == nb ? 0 : (na ? 1 : -1);
  int c = CompareDatum(a, b);
  return ascending ? c : -c;
}

class OrderByOp : public Op {
 public:
  OrderByOp(const PlanOp& plan, OperatorStats* stats, const ExecContext& ctx)
      : Op(plan, stats, ctx), held_(RowBatch::ForSchema(plan.schema)) {}

  void Finish() override {
    const auto& keys = plan_.as<OrderByArgs>().keys;
    std::vector<size_t> order(held_.rows);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      for (size_t k = 0; k < keys.size(); ++k) {
        int c = CompareSortKey(sort_keys_[x][k], sort_keys_[y][k], keys[k].ascending);
        if (c != 0) return c < 0;
      }
      return false;
    });
    for (size_t r : order) {
      out_.CopyPrefix(held_, r);
      if (!EndRow()) break;
    }
    Op::Finish();
  }

 protected:
  bool Consume(const RowBatch& in) override {
    const auto& keys = plan_.as<OrderByArgs>().keys;
    for (size_t r = 0; r < in.rows; ++r) {
      held_.CopyPrefix(in, r);
      ++held_.rows;
      std::vector<Datum> k;
      k.reserve(keys.size());
      for (const auto& key : keys) k.push_back(Eval(*key.expr, in, r, ctx_));
      sort_keys_.push_back(std::move(k));
    }
    return true;
  }

 private:
  RowBatch held_;
  std::vector<std::vector<Datum>> sort_keys_;
};

class AggregateOp : public Op {
 public:
  using Op::Op;

  void Finish() override {
    const auto& a = plan_.as<AggregateArgs>();
    if (groups_.empty() && a.keys.empty()) groups_[{}].assign(a.counts.size(), 0);
    for (const auto& [keys, counts] : groups_) {
      for (size_t i = 0; i < a.outputs.size(); ++i) {
        auto [is_count, idx] = a.outputs[i];
        if (is_count) {
          out_.columns[i].PushValue(PropertyValue(counts[idx]));
        } else {
          out_.columns[i].Push(keys[idx]);
        }
      }
      if (!EndRow()) break;
    }
    Op::Finish();
  }

 protected:
  bool Consume(const RowBatch& in) override {
    const auto& a = plan_.as<AggregateArgs>();
    for (size_t r = 0; r < in.rows; ++r) {
      std::vector<Datum> keys;
      keys.reserve(a.keys.size());
      for (const auto& k : a.keys) keys.push_back(Eval(*k, in, r, ctx_));
      auto& counts = groups_[std::move(keys)];
      counts.resize(a.counts.size(), 0);
      for (size_t i = 0; i < a.counts.size(); ++i) {
        if (a.counts[i] == nullptr || !IsNull(Eval(*a.counts[i], in, r, ctx_))) ++counts[i];
      }
    }
    return true;
  }

 private:
  struct KeyLess {
    bool operator()(const std::vector<Datum>& x, const std::vector<Datum>& y) const {
      for (size_t i = 0; i < x.size(); ++i) {
        int c = CompareDatum(x[i], y[i]);
        if (c != 0) return c < 0;
      }
      return false;
    }
  };
  std::map<std::vector<Datum>, std::vector<int64_t>, KeyLess> groups_;
};

double NumberArg(const PropertyValue& v, const char* what) {
  if (!v.is_numeric()) Runtime(fmt::format("{} must be a number, got {}", what, ValueTypeName(v.type())));
  return v.as_number();
}

int64_t IntArg(const PropertyValue& v, const char* what) {
  if (v.type() != ValueType::kInt) {
    Runtime(fmt::format("{} must be an integer, got {}", what, ValueTypeName(v.type())));
  }
  return v.as_int();
}

const std::string& TextArg(const PropertyValue& v, const char* what) {
  if (v.type() != ValueType::kText) {
    Runtime(fmt::format("{} must be a string, got {}", what, ValueTypeName(v.type())));
  }
  return v.as_text();
}

analytics::PageRankOptions PageRankArgs(const std::vector<PropertyValue>& args, size_t first) {
  analytics::PageRankOptions o;
  if (args.size() > first) o.damping = NumberArg(args[first], "damping");
  if (args.size() > first + 1) {
    int64_t it = IntArg(args[first + 1], "max_iter");
    if (it <= 0) Throw(ErrorCode::kInvalidArgument, "max_iter must be positive");
    o.max_iterations = static_cast<uint32_t>(std::min<int64_t>(it, UINT32_MAX));
  }
  if (args.size() > first + 2) o.tolerance = NumberArg(args[first + 2], "tol");
  if (args.size() > first + 3) Runtime("pagerank takes at most 3 arguments");
  return o;
}

class CallProcedureOp : public Op {
 public:
  using Op::Op;

 protected:
  bool Consume(const RowBatch& in) override {
    const auto& a = plan_.as<CallArgs>();
    std::vector<PropertyValue> args;
    for (const auto& e : a.args) args.push_back(EvalConstant(*e, ctx_));
    std::vector<std::vector<Datum>> rows = Run(a, args);
    const size_t base = in.columns.size();
    for (size_t r = 0; r < in.rows; ++r) {
      for (const auto& row : rows) {
        out_.CopyPrefix(in, r);
        for (size_t i = 0; i < a.yields.size(); ++i) out_.columns[base + i].Push(row[a.yields[i]]);
        if (!EndRow()) return false;
      }
    }
    return true;
  }

 private:
  std::vector<std::vector<Datum>> Run(const CallArgs& a, const std::vector<PropertyValue>& args) {
    std::vector<std::vector<Datum>> rows;
    const auto& topology = ctx_.engine->topology();
    switch (a.procedure) {
      case Procedure::kPageRank: {
        auto result = analytics::PageRank(analytics::GraphSnapshot::Take(topology),
                                          PageRankArgs(args, 0));
        for (size_t i = 0; i < result.vertices.size(); ++i) {
          rows.push_back({result.vertices[i], result.values[i]});
        }
        break;
      }
      case Procedure::kWcc: {
        auto snapshot = analytics::GraphSnapshot::Take(topology);
        auto reps = analytics::ComponentRepresentatives(snapshot);
        for (size_t i = 0; i < reps.size(); ++i) rows.push_back({snapshot.vertices[i], reps[i]});
        break;
      }
      case Procedure::kWriteBack: {
        const std::string& proc = TextArg(args[0], "writeback procedure");
        const std::string& field = TextArg(args[1], "writeback field");
        auto snapshot = analytics::GraphSnapshot::Take(topology);
        analytics::ProcedureResult result;
        if (proc == "pagerank") {
          result = analytics::PageRank(snapshot, PageRankArgs(args, 2));
        } else if (proc == "wcc") {
          if (args.size() > 2) Runtime("wcc takes no arguments");
          result = analytics::WeaklyConnectedComponents(snapshot);
        } else {
          Runtime(fmt::format("writeback: unknown procedure '{}'", proc));
        }
        size_t n = analytics::WriteBack(writer(), result, field);
        rows.push_back({PropertyValue(static_cast<int64_t>(n))});
        break;
      }
      case Procedure::kVectorSearch: {
        const std::string& name = TextArg(args[0], "collection");
        if (args[1].type() != ValueType::kVector) {
          Runtime(fmt::format("query must be a vector, got {}", ValueTypeName(args[1].type())));
        }
        int64_t k = IntArg(args[2], "k");
        if (k <= 0) Throw(ErrorCode::kInvalidArgument, "k must be at least 1");
        size_t ef = ctx_.options.ef_search;
        if (args.size() > 3) {
          int64_t e = IntArg(args[3], "ef");
          if (e <= 0) Throw(ErrorCode::kInvalidArgument, "ef must be at least 1");
          ef = static_cast<size_t>(e);
        }
        auto hits = ctx_.vectors->Get(name)->Search(args[1].as_vector(), static_cast<size_t>(k), ef);
        for (const auto& h : hits) rows.push_back({h.key, PropertyValue(h.score)});
        break;
      }
    }
    return rows;
  }
};

/// Runs all creations once its input is complete, so patterns it reads are
/// never modified mid-scan.
class CreateOp : public Op {
 public:
  CreateOp(const PlanOp& plan, OperatorStats* stats, const ExecContext& ctx, WriteStats* writes)
      : Op(plan, stats, ctx), held_(RowBatch::ForSchema(plan.input ? plan.input->schema : Schema{})),
        writes_(writes) {}

  void Finish() override {
    const auto& a = plan_.as<CreateArgs>();
    auto& w = writer();
    for (size_t r = 0; r < held_.rows && !stopped_; ++r) {
      out_.CopyPrefix(held_, r);
      std::vector<VertexId> nodes(a.nodes.size());
      for (size_t i = 0; i < a.nodes.size(); ++i) {
        const auto& n = a.nodes[i];
        if (n.exists) {
          nodes[i] = held_.columns[n.column].vertex(r);
          continue;
        }
        PropertyValue id;
        if (n.id) id = ToValue(Eval(*n.id, held_, r, ctx_));
        if (id.is_null()) {
          nodes[i] = w.CreateVertex(n.label);
        } else {
          if (id.type() != ValueType::kInt || id.as_int() < 0) {
            Runtime(fmt::format("vertex id must be a non-negative integer, got {}", id.ToString()));
          }
          nodes[i] = VertexId{n.label, static_cast<uint64_t>(id.as_int())};
          w.CreateVertex(nodes[i]);
        }
        ++writes_->vertices_created;
        SetProps(w, nodes[i], n.props, r);
        out_.columns[n.column].PushVertex(nodes[i]);
      }
      for (const auto& e : a.edges) {
        VertexId src = nodes[e.src], dst = nodes[e.dst];
        uint64_t id = w.InsertEdge(src, dst, e.label);
        EdgeRef ref{src, EdgeKey(e.label, dst, id)};
        ++writes_->edges_created;
        SetProps(w, ref, e.props, r);
        if (e.column) out_.columns[*e.column].PushEdge(ref);
      }
      EndRow();
    }
    Op::Finish();
  }

 protected:
  bool Consume(const RowBatch& in) override {
    for (size_t r = 0; r < in.rows; ++r) {
      held_.CopyPrefix(in, r);
      ++held_.rows;
    }
    return true;
  }

 private:
  static PropertyValue ToValue(Datum d) {
    auto* v = std::get_if<PropertyValue>(&d);
    if (v == nullptr) Runtime("a vertex or edge cannot be stored as a property");
    return std::move(*v);
  }

  void SetProps(db::Writer& w, const mem::AttrOwner& owner,
                const std::vector<std::pair<FieldId, BoundPtr>>& props, size_t r) {
    for (const auto& [field, expr] : props) {
      auto value = ToValue(Eval(*expr, held_, r, ctx_));
      if (value.is_null()) continue;
      w.SetAttribute(owner, field, value);
      ++writes_->properties_set;
    }
  }

  RowBatch held_;
  WriteStats* writes_;
};

class CreateIndexOp : public Op {
 public:
  using Op::Op;

 protected:
  bool Consume(const RowBatch&) override {
    const auto& a = plan_.as<CreateIndexArgs>();
    writer().CreateCollection(a.name, a.config, db::m::Binding{a.label, a.field});
    return true;
  }
};

std::unique_ptr<Op> MakeOp(const PlanOp& plan, OperatorStats* stats, const ExecContext& ctx,
                           WriteStats* writes) {
  switch (plan.kind) {
    case OpKind::kVertexScan: return std::make_unique<VertexScanOp>(plan, stats, ctx);
    case OpKind::kVertexVectorScan: return std::make_unique<VertexVectorScanOp>(plan, stats, ctx);
    case OpKind::kExpand:
    case OpKind::kVarLengthExpand: return std::make_unique<ExpandOp>(plan, stats, ctx);
    case OpKind::kFilter: return std::make_unique<FilterOp>(plan, stats, ctx);
    case OpKind::kProject: return std::make_unique<ProjectOp>(plan, stats, ctx);
    case OpKind::kOrderBy: return std::make_unique<OrderByOp>(plan, stats, ctx);
    case OpKind::kLimit: return std::make_unique<LimitOp>(plan, stats, ctx);
    case OpKind::kAggregate: return std::make_unique<AggregateOp>(plan, stats, ctx);
    case OpKind::kCallProcedure: return std::make_unique<CallProcedureOp>(plan, stats, ctx);
    case OpKind::kCreate: return std::make_unique<CreateOp>(plan, stats, ctx, writes);
    case OpKind::kCreateIndex: return std::make_unique<CreateIndexOp>(plan, stats, ctx);
  }
  Runtime("unknown operator");
}

}  // namespace

ExecResult Execute(const Plan& plan, const ExecContext& ctx) {
  if (ctx.options.batch_size == 0) Throw(ErrorCode::kInvalidArgument, "batch_size must be positive");
  ExecResult result;
  auto pipeline = plan.Pipeline();
  if (pipeline.empty()) return result;
  for (const auto& c : plan.root->schema) {
    if (!c.hidden) result.columns.push_back(c.name);
  }
  result.operators.resize(pipeline.size() + 1);
  std::vector<std::unique_ptr<Op>> ops;
  for (size_t i = 0; i < pipeline.size(); ++i) {
    result.operators[i].name = std::string(OpName(pipeline[i]->kind));
    ops.push_back(MakeOp(*pipeline[i], &result.operators[i], ctx, &result.writes));
  }
  result.operators.back().name = "Sink";
  ops.push_back(std::make_unique<SinkOp>(*plan.root, &result.operators.back(), ctx,
                                         plan.returns_rows, &result.rows));
  for (size_t i = 0; i + 1 < ops.size(); ++i) ops[i]->Connect(ops[i + 1].get());

  RowBatch seed;
  seed.rows = 1;
  ops.front()->Push(seed);
  ops.front()->Finish();
  if (!plan.returns_rows) result.columns.clear();
  return result;
}

}  // namespace arcforge::query
