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

#include <memory>
#include <optional>
#include <vector>

#include "arcforge/mem/attribute_store.h"
#include "arcforge/mem/catalog.h"
#include "arcforge/mem/graph_topology.h"

namespace arcforge::mem {

struct MemEngineOptions {
  size_t edge_threshold = kDefaultEdgeThreshold;
  size_t cache_capacity = AttributeCache::kDefaultCapacity;
};

/// In-memory graph engine: schema, topology with adaptive edge collections,
/// and attributes behind an LRU cache.
///
/// Not synchronized for writers. The owning Database serializes mutations and
/// lets readers in under a shared lock; only the cache is touched by readers.
class MemEngine {
 public:
  explicit MemEngine(MemEngineOptions options = {});

  Catalog& catalog() { return catalog_; }
  const Catalog& catalog() const { return catalog_; }
  const GraphTopology& topology() const { return *topology_; }
  const AttributeStore& store() const { return store_; }
  AttributeCache& cache() const { return *cache_; }
  const MemEngineOptions& options() const { return options_; }

  // Vertices -------------------------------------------------------------
  void CreateVertex(const VertexId& v);  // UnknownLabel, DuplicateVertex
  /// Detaches and removes the vertex and every incident edge, together with
  /// all of their attributes. Returns false if the vertex did not exist.
  bool DeleteVertex(const VertexId& v);
  bool HasVertex(const VertexId& v) const { return topology_->HasVertex(v); }

  // Edges ----------------------------------------------------------------
  bool InsertEdge(const VertexId& src, const VertexId& dst, LabelId label, uint64_t edge_id);
  bool RemoveEdge(const VertexId& src, const VertexId& dst, LabelId label, uint64_t edge_id);
  std::vector<EdgeKey> Neighbors(const VertexId& v, Direction d,
                                 std::optional<LabelId> label = std::nullopt) const {
    return topology_->Neighbors(v, d, label);
  }
  uint64_t Degree(const VertexId& v, Direction d) const { return topology_->Degree(v, d); }

  // Attributes -----------------------------------------------------------
  /// Current value (Null if unset). Populates the cache on a miss.
  /// Throws UnknownVertex (or UnknownVertex for a missing edge) and
  /// UnknownField.
  PropertyValue GetAttribute(const AttrOwner& owner, FieldId field) const;
  /// Validates owner, field, type, and dimension; returns the value in its
  /// stored form. Does not modify anything.
  PropertyValue CheckAttribute(const AttrOwner& owner, FieldId field,
                               const PropertyValue& value) const;
  void SetAttribute(const AttrOwner& owner, FieldId field, const PropertyValue& value);

  const FieldDef& FieldOf(const AttrOwner& owner, FieldId field) const;
  void CheckOwner(const AttrOwner& owner) const;

  MemoryFootprint Footprint() const;

  /// Replaces topology and attributes wholesale (checkpoint restore).
  void Restore(Catalog catalog, std::unique_ptr<GraphTopology> topology, AttributeStore store);

 private:
  MemEngineOptions options_;
  Catalog catalog_;
  std::unique_ptr<GraphTopology> topology_;
  AttributeStore store_;
  std::unique_ptr<AttributeCache> cache_;
};

}  // namespace arcforge::mem
