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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arcforge/common/binary_io.h"
#include "arcforge/common/types.h"
#include "arcforge/mem/adaptive_edge_collection.h"

namespace arcforge::mem {

struct LabeledEdges {
  LabelId label;
  AdaptiveEdgeCollection edges;
};

/// Per-vertex adjacency: one collection per edge label and direction (sorted
/// by label) plus the maintained degree counters.
struct VertexAdjacency {
  using Slots = std::vector<LabeledEdges, CountingAllocator<LabeledEdges>>;

  explicit VertexAdjacency(AllocationCounter* counter)
      : out(CountingAllocator<LabeledEdges>(counter)),
        in(CountingAllocator<LabeledEdges>(counter)) {}

  Slots out;
  Slots in;
  uint64_t out_degree = 0;
  uint64_t in_degree = 0;

  Slots& slots(Direction d) { return d == Direction::kOut ? out : in; }
  const Slots& slots(Direction d) const { return d == Direction::kOut ? out : in; }
  uint64_t degree(Direction d) const { return d == Direction::kOut ? out_degree : in_degree; }
};

struct MemoryFootprint {
  /// Fixed object size plus every byte allocated for vertices and adjacency.
  int64_t topology_bytes = 0;
  size_t small_collections = 0;
  size_t large_collections = 0;
  int64_t cache_bytes = 0;
};

/// In-memory forward and reverse adjacency over all vertices.
///
/// Every edge u -[l,id]-> v lives in out[u][l] as (l, v, id) and in in[v][l]
/// as (l, u, id). Vertices are kept in VertexId order, which is also the scan
/// order exposed to the query layer.
class GraphTopology {
 public:
  explicit GraphTopology(size_t threshold = kDefaultEdgeThreshold);
  GraphTopology(const GraphTopology&) = delete;
  GraphTopology& operator=(const GraphTopology&) = delete;

  size_t threshold() const { return threshold_; }

  bool AddVertex(const VertexId& v);
  bool HasVertex(const VertexId& v) const { return vertices_.contains(v); }
  /// Removes the vertex and all incident edges. Removed edges are reported in
  /// forward form (source, key) so callers can drop edge attributes.
  bool RemoveVertex(const VertexId& v, std::vector<EdgeRef>* removed = nullptr);

  /// Throws UnknownVertex if either endpoint is absent.
  bool InsertEdge(const VertexId& src, const VertexId& dst, LabelId label,
                  uint64_t edge_id);
  bool RemoveEdge(const VertexId& src, const VertexId& dst, LabelId label,
                  uint64_t edge_id);
  bool HasEdge(const EdgeRef& edge) const;

  /// Answered from the maintained counter. Throws UnknownVertex.
  uint64_t Degree(const VertexId& v, Direction d) const;

  /// Materialized, ordered neighbor list. Throws UnknownVertex.
  std::vector<EdgeKey> Neighbors(const VertexId& v, Direction d,
                                 std::optional<LabelId> label = std::nullopt) const;

  /// Ordered walk without materializing. fn may return bool to stop early;
  /// the return value is false if the walk was stopped.
  template <typename Fn>
  bool ForEachNeighbor(const VertexId& v, Direction d,
                       std::optional<LabelId> label, Fn&& fn) const {
    const auto& adj = Adjacency(v);
    for (const auto& slot : adj.slots(d)) {
      if (label && slot.label != *label) continue;
      if (!slot.edges.ForEach(fn)) return false;
    }
    return true;
  }

  /// Adjacency collection for (v, d, label), or null if that vertex has no
  /// edges with the label in that direction.
  const AdaptiveEdgeCollection* Collection(const VertexId& v, Direction d,
                                           LabelId label) const;

  /// Vertices in ascending order, optionally restricted to one label.
  template <typename Fn>
  void ForEachVertex(std::optional<LabelId> label, Fn&& fn) const {
    auto [first, last] = Range(label);
    for (auto it = first; it != last; ++it) {
      if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const VertexId&>, bool>) {
        if (!fn(it->first)) return;
      } else {
        fn(it->first);
      }
    }
  }
  std::vector<VertexId> Vertices(std::optional<LabelId> label = std::nullopt) const;
  /// Largest vertex of a label, if any.
  std::optional<VertexId> LastVertex(LabelId label) const;
  size_t VertexCount(LabelId label) const;

  size_t vertex_count() const { return vertices_.size(); }
  size_t edge_count() const { return edge_count_; }

  MemoryFootprint Footprint() const;

  /// Checkpoint image: vertices then forward edges, in order.
  void Serialize(ByteWriter& out) const;
  static std::unique_ptr<GraphTopology> Deserialize(ByteReader& in, size_t threshold);

  /// Same vertices and edges under a different threshold.
  std::unique_ptr<GraphTopology> CloneWithThreshold(size_t threshold) const;

  friend bool operator==(const GraphTopology& a, const GraphTopology& b);

 private:
  using VertexMap =
      std::map<VertexId, VertexAdjacency, std::less<>,
               CountingAllocator<std::pair<const VertexId, VertexAdjacency>>>;

  const VertexAdjacency& Adjacency(const VertexId& v) const;
  VertexAdjacency& Adjacency(const VertexId& v);
  std::pair<VertexMap::const_iterator, VertexMap::const_iterator> Range(
      std::optional<LabelId> label) const;

  AdaptiveEdgeCollection& SlotFor(VertexAdjacency& adj, Direction d, LabelId label);
  bool EraseFromSlot(VertexAdjacency& adj, Direction d, const EdgeKey& key);

  size_t threshold_;
  std::unique_ptr<AllocationCounter> counter_;
  VertexMap vertices_;
  size_t edge_count_ = 0;
};

}  // namespace arcforge::mem
