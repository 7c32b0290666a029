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

#include "arcforge/db/mutation.h"

#include <fmt/format.h>

#include "arcforge/common/error.h"

namespace arcforge::db {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

enum class SchemaOp : uint8_t { kAddLabel = 0, kAddField = 1 };

void PutOwner(ByteWriter& out, const mem::AttrOwner& owner) {
  if (const auto* v = std::get_if<VertexId>(&owner)) {
    out.Put<uint8_t>(0);
    out.PutVertex(*v);
  } else {
    const auto& e = std::get<EdgeRef>(owner);
    out.Put<uint8_t>(1);
    out.PutVertex(e.src);
    out.PutEdgeKey(e.key);
  }
}

mem::AttrOwner GetOwner(ByteReader& in) {
  auto tag = in.Get<uint8_t>();
  if (tag == 0) return in.GetVertex();
  if (tag != 1) Throw(ErrorCode::kCorruptLog, "bad attribute owner tag");
  EdgeRef e;
  e.src = in.GetVertex();
  e.key = in.GetEdgeKey();
  return e;
}

void PutPayload(ByteWriter& out, const vec::Payload& payload) {
  out.Put<uint32_t>(static_cast<uint32_t>(payload.size()));
  for (const auto& [field, value] : payload) {
    out.PutString(field);
    out.PutValue(value);
  }
}

vec::Payload GetPayload(ByteReader& in) {
  vec::Payload payload;
  auto n = in.Get<uint32_t>();
  for (uint32_t i = 0; i < n; ++i) {
    auto field = in.GetString();
    payload.emplace(std::move(field), in.GetValue());
  }
  return payload;
}

}  // namespace

void PutConfig(ByteWriter& out, const vec::CollectionConfig& config) {
  out.Put<uint32_t>(config.dimension);
  out.Put<uint8_t>(static_cast<uint8_t>(config.metric));
  out.Put<uint32_t>(config.hnsw.m);
  out.Put<uint32_t>(config.hnsw.ef_construction);
  out.Put<uint64_t>(config.seal_threshold);
  out.Put<double>(config.compact_ratio);
  out.Put<uint64_t>(config.brute_force_limit);
}

vec::CollectionConfig GetConfig(ByteReader& in) {
  vec::CollectionConfig config;
  config.dimension = in.Get<uint32_t>();
  config.metric = static_cast<vec::Metric>(in.Get<uint8_t>());
  config.hnsw.m = in.Get<uint32_t>();
  config.hnsw.ef_construction = in.Get<uint32_t>();
  config.seal_threshold = in.Get<uint64_t>();
  config.compact_ratio = in.Get<double>();
  config.brute_force_limit = in.Get<uint64_t>();
  return config;
}

wal::WalOp OpOf(const Mutation& mutation) {
  using wal::WalOp;
  return std::visit(
      Overloaded{
          [](const m::AddLabel&) { return WalOp::kSchemaChange; },
          [](const m::AddField&) { return WalOp::kSchemaChange; },
          [](const m::CreateVertex&) { return WalOp::kCreateVertex; },
          [](const m::DeleteVertex&) { return WalOp::kDeleteVertex; },
          [](const m::InsertEdge&) { return WalOp::kInsertEdge; },
          [](const m::RemoveEdge&) { return WalOp::kRemoveEdge; },
          [](const m::SetAttribute&) { return WalOp::kSetAttribute; },
          [](const m::CreateCollection&) { return WalOp::kCreateCollection; },
          [](const m::DeleteCollection&) { return WalOp::kDeleteCollection; },
          [](const m::UpsertPoints&) { return WalOp::kUpsertPoints; },
          [](const m::DeletePoints&) { return WalOp::kDeletePoints; },
      },
      mutation);
}

std::string EncodeMutation(const Mutation& mutation) {
  ByteWriter out;
  std::visit(Overloaded{
                 [&](const m::AddLabel& x) {
                   out.Put<uint8_t>(static_cast<uint8_t>(SchemaOp::kAddLabel));
                   out.Put<uint8_t>(static_cast<uint8_t>(x.kind));
                   out.PutString(x.name);
                 },
                 [&](const m::AddField& x) {
                   out.Put<uint8_t>(static_cast<uint8_t>(SchemaOp::kAddField));
                   out.Put<uint8_t>(static_cast<uint8_t>(x.kind));
                   out.Put<uint16_t>(x.label);
                   out.PutString(x.name);
                   out.Put<uint8_t>(static_cast<uint8_t>(x.type));
                   out.Put<uint32_t>(x.dimension);
                 },
                 [&](const m::CreateVertex& x) { out.PutVertex(x.v); },
                 [&](const m::DeleteVertex& x) { out.PutVertex(x.v); },
                 [&](const m::InsertEdge& x) {
                   out.PutVertex(x.src);
                   out.PutVertex(x.dst);
                   out.Put<uint16_t>(x.label);
                   out.Put<uint64_t>(x.edge_id);
                 },
                 [&](const m::RemoveEdge& x) {
                   out.PutVertex(x.src);
                   out.PutVertex(x.dst);
                   out.Put<uint16_t>(x.label);
                   out.Put<uint64_t>(x.edge_id);
                 },
                 [&](const m::SetAttribute& x) {
                   PutOwner(out, x.owner);
                   out.Put<uint32_t>(x.field);
                   out.PutValue(x.value);
                 },
                 [&](const m::CreateCollection& x) {
                   out.PutString(x.name);
                   PutConfig(out, x.config);
                   out.Put<uint8_t>(x.binding ? 1 : 0);
                   if (x.binding) {
                     out.Put<uint16_t>(x.binding->label);
                     out.Put<uint32_t>(x.binding->field);
                   }
                 },
                 [&](const m::DeleteCollection& x) { out.PutString(x.name); },
                 [&](const m::UpsertPoints& x) {
                   out.PutString(x.collection);
                   out.Put<uint32_t>(static_cast<uint32_t>(x.points.size()));
                   for (const auto& p : x.points) {
                     out.PutVertex(p.key);
                     out.Put<uint32_t>(static_cast<uint32_t>(p.vector.size()));
                     out.PutFloats(p.vector);
                     PutPayload(out, p.payload);
                   }
                 },
                 [&](const m::DeletePoints& x) {
                   out.PutString(x.collection);
                   out.Put<uint64_t>(x.keys.size());
                   for (const auto& k : x.keys) out.PutVertex(k);
                 },
             },
             mutation);
  return out.Take();
}

Mutation DecodeMutation(wal::WalOp op, std::string_view payload) {
  using wal::WalOp;
  ByteReader in(payload, ErrorCode::kCorruptLog);
  Mutation out;
  switch (op) {
    case WalOp::kSchemaChange: {
      auto sub = static_cast<SchemaOp>(in.Get<uint8_t>());
      auto kind = static_cast<mem::LabelKind>(in.Get<uint8_t>());
      if (sub == SchemaOp::kAddLabel) {
        out = m::AddLabel{kind, in.GetString()};
      } else if (sub == SchemaOp::kAddField) {
        m::AddField f{kind, 0, {}, ValueType::kNull, 0};
        f.label = in.Get<uint16_t>();
        f.name = in.GetString();
        f.type = static_cast<ValueType>(in.Get<uint8_t>());
        f.dimension = in.Get<uint32_t>();
        out = std::move(f);
      } else {
        Throw(ErrorCode::kCorruptLog, "unknown schema change");
      }
      break;
    }
    case WalOp::kCreateVertex: out = m::CreateVertex{in.GetVertex()}; break;
    case WalOp::kDeleteVertex: out = m::DeleteVertex{in.GetVertex()}; break;
    case WalOp::kInsertEdge:
    case WalOp::kRemoveEdge: {
      VertexId src = in.GetVertex();
      VertexId dst = in.GetVertex();
      LabelId label = in.Get<uint16_t>();
      uint64_t id = in.Get<uint64_t>();
      if (op == WalOp::kInsertEdge) {
        out = m::InsertEdge{src, dst, label, id};
      } else {
        out = m::RemoveEdge{src, dst, label, id};
      }
      break;
    }
    case WalOp::kSetAttribute: {
      m::SetAttribute s{GetOwner(in), 0, {}};
      s.field = in.Get<uint32_t>();
      s.value = in.GetValue();
      out = std::move(s);
      break;
    }
    case WalOp::kCreateCollection: {
      m::CreateCollection c;
      c.name = in.GetString();
      c.config = GetConfig(in);
      if (in.Get<uint8_t>() != 0) {
        m::Binding b{};
        b.label = in.Get<uint16_t>();
        b.field = in.Get<uint32_t>();
        c.binding = b;
      }
      out = std::move(c);
      break;
    }
    case WalOp::kDeleteCollection: out = m::DeleteCollection{in.GetString()}; break;
    case WalOp::kUpsertPoints: {
      m::UpsertPoints u;
      u.collection = in.GetString();
      auto n = in.Get<uint32_t>();
      for (uint32_t i = 0; i < n; ++i) {
        vec::Point p;
        p.key = in.GetVertex();
        p.vector.resize(in.Get<uint32_t>());
        in.GetFloats(p.vector);
        p.payload = GetPayload(in);
        u.points.push_back(std::move(p));
      }
      out = std::move(u);
      break;
    }
    case WalOp::kDeletePoints: {
      m::DeletePoints d;
      d.collection = in.GetString();
      auto n = in.Get<uint64_t>();
      for (uint64_t i = 0; i < n; ++i) d.keys.push_back(in.GetVertex());
      out = std::move(d);
      break;
    }
    default:
      Throw(ErrorCode::kCorruptLog, fmt::format("unknown wal op {}", static_cast<int>(op)));
  }
  if (!in.AtEnd()) Throw(ErrorCode::kCorruptLog, fmt::format("trailing bytes in {} record", wal::WalOpName(op)));
  return out;
}

}  // namespace arcforge::db
