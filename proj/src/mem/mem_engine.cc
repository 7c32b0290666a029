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

#include "arcforge/mem/mem_engine.h"

#include <fmt/format.h>

#include "arcforge/common/error.h"

namespace arcforge::mem {

MemEngine::MemEngine(MemEngineOptions options)
    : options_(options),
      topology_(std::make_unique<GraphTopology>(options.edge_threshold)),
      cache_(std::make_unique<AttributeCache>(options.cache_capacity)) {}

void MemEngine::CreateVertex(const VertexId& v) {
  catalog_.Label(LabelKind::kVertex, v.label);
  if (!topology_->AddVertex(v)) {
    Throw(ErrorCode::kDuplicateVertex, fmt::format("vertex {} already exists", ToString(v)));
  }
}

bool MemEngine::DeleteVertex(const VertexId& v) {
  std::vector<EdgeRef> removed;
  if (!topology_->RemoveVertex(v, &removed)) return false;
  for (const auto& key : store_.EraseOwner(v)) cache_->Invalidate(key);
  for (const auto& e : removed) {
    for (const auto& key : store_.EraseOwner(e)) cache_->Invalidate(key);
  }
  return true;
}

bool MemEngine::InsertEdge(const VertexId& src, const VertexId& dst, LabelId label,
                           uint64_t edge_id) {
  catalog_.Label(LabelKind::kEdge, label);
  return topology_->InsertEdge(src, dst, label, edge_id);
}

bool MemEngine::RemoveEdge(const VertexId& src, const VertexId& dst, LabelId label,
                           uint64_t edge_id) {
  if (!topology_->RemoveEdge(src, dst, label, edge_id)) return false;
  EdgeRef e{src, EdgeKey(label, dst, edge_id)};
  for (const auto& key : store_.EraseOwner(e)) cache_->Invalidate(key);
  return true;
}

void MemEngine::CheckOwner(const AttrOwner& owner) const {
  if (const auto* v = std::get_if<VertexId>(&owner)) {
    if (!topology_->HasVertex(*v)) {
      Throw(ErrorCode::kUnknownVertex, fmt::format("vertex {} does not exist", ToString(*v)));
    }
    return;
  }
  const auto& e = std::get<EdgeRef>(owner);
  if (!topology_->HasEdge(e)) {
    Throw(ErrorCode::kUnknownVertex,
          fmt::format("edge {} -[{}:{}]-> {} does not exist", ToString(e.src), e.key.edge_label,
                      e.key.edge_id, ToString(e.dst())));
  }
}

const FieldDef& MemEngine::FieldOf(const AttrOwner& owner, FieldId field) const {
  if (const auto* v = std::get_if<VertexId>(&owner)) {
    return catalog_.Field(LabelKind::kVertex, v->label, field);
  }
  return catalog_.Field(LabelKind::kEdge, std::get<EdgeRef>(owner).key.edge_label, field);
}

PropertyValue MemEngine::GetAttribute(const AttrOwner& owner, FieldId field) const {
  CheckOwner(owner);
  FieldOf(owner, field);
  AttrKey key{owner, field};
  if (auto hit = cache_->Lookup(key)) return std::move(*hit);
  const auto* stored = store_.Get(key);
  PropertyValue value = stored != nullptr ? *stored : PropertyValue{};
  cache_->Insert(key, value);
  return value;
}

PropertyValue MemEngine::CheckAttribute(const AttrOwner& owner, FieldId field,
                                        const PropertyValue& value) const {
  CheckOwner(owner);
  return Catalog::Coerce(FieldOf(owner, field), value);
}

void MemEngine::SetAttribute(const AttrOwner& owner, FieldId field, const PropertyValue& value) {
  auto stored = CheckAttribute(owner, field, value);
  AttrKey key{owner, field};
  store_.Put(key, stored);
  // Keep a cached entry coherent with the store; absent entries stay absent.
  if (cache_->Contains(key)) cache_->Insert(key, std::move(stored));
}

MemoryFootprint MemEngine::Footprint() const {
  auto fp = topology_->Footprint();
  fp.cache_bytes = cache_->ApproxBytes();
  return fp;
}

void MemEngine::Restore(Catalog catalog, std::unique_ptr<GraphTopology> topology,
                        AttributeStore store) {
  catalog_ = std::move(catalog);
  topology_ = std::move(topology);
  store_ = std::move(store);
  cache_->Clear();
}

}  // namespace arcforge::mem
