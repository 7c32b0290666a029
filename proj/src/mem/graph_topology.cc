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

#include "arcforge/mem/graph_topology.h"

#include <fmt/format.h>

#include <algorithm>
#include <iterator>

#include "arcforge/common/error.h"

namespace arcforge::mem {

GraphTopology::GraphTopology(size_t threshold)
    : threshold_(threshold),
      counter_(std::make_unique<AllocationCounter>()),
      vertices_(VertexMap::allocator_type(counter_.get())) {}

bool GraphTopology::AddVertex(const VertexId& v) {
  auto [it, inserted] = vertices_.try_emplace(v, counter_.get());
  return inserted;
}

const VertexAdjacency& GraphTopology::Adjacency(const VertexId& v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) {
    Throw(ErrorCode::kUnknownVertex, fmt::format("vertex {} does not exist", ToString(v)));
  }
  return it->second;
}

VertexAdjacency& GraphTopology::Adjacency(const VertexId& v) {
  return const_cast<VertexAdjacency&>(std::as_const(*this).Adjacency(v));
}

AdaptiveEdgeCollection& GraphTopology::SlotFor(VertexAdjacency& adj, Direction d,
                                               LabelId label) {
  auto& slots = adj.slots(d);
  auto it = std::lower_bound(slots.begin(), slots.end(), label,
                             [](const LabeledEdges& s, LabelId l) { return s.label < l; });
  if (it == slots.end() || it->label != label) {
    it = slots.insert(it, LabeledEdges{label, AdaptiveEdgeCollection(threshold_, counter_.get())});
  }
  return it->edges;
}

bool GraphTopology::EraseFromSlot(VertexAdjacency& adj, Direction d, const EdgeKey& key) {
  auto& slots = adj.slots(d);
  auto it = std::lower_bound(slots.begin(), slots.end(), key.edge_label,
                             [](const LabeledEdges& s, LabelId l) { return s.label < l; });
  if (it == slots.end() || it->label != key.edge_label) return false;
  // Empty collections are kept: a removal never changes representation.
  return it->edges.Remove(key);
}

bool GraphTopology::InsertEdge(const VertexId& src, const VertexId& dst, LabelId label,
                               uint64_t edge_id) {
  auto& out_adj = Adjacency(src);
  auto& in_adj = Adjacency(dst);
  if (!SlotFor(out_adj, Direction::kOut, label).Insert(EdgeKey(label, dst, edge_id))) {
    return false;
  }
  SlotFor(in_adj, Direction::kIn, label).Insert(EdgeKey(label, src, edge_id));
  ++out_adj.out_degree;
  ++in_adj.in_degree;
  ++edge_count_;
  return true;
}

bool GraphTopology::RemoveEdge(const VertexId& src, const VertexId& dst, LabelId label,
                               uint64_t edge_id) {
  auto src_it = vertices_.find(src);
  auto dst_it = vertices_.find(dst);
  if (src_it == vertices_.end() || dst_it == vertices_.end()) return false;
  if (!EraseFromSlot(src_it->second, Direction::kOut, EdgeKey(label, dst, edge_id))) {
    return false;
  }
  EraseFromSlot(dst_it->second, Direction::kIn, EdgeKey(label, src, edge_id));
  --src_it->second.out_degree;
  --dst_it->second.in_degree;
  --edge_count_;
  return true;
}

bool GraphTopology::HasEdge(const EdgeRef& edge) const {
  const auto* c = Collection(edge.src, Direction::kOut, edge.key.edge_label);
  return c != nullptr && c->Contains(edge.key);
}

bool GraphTopology::RemoveVertex(const VertexId& v, std::vector<EdgeRef>* removed) {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) return false;
  std::vector<EdgeRef> incident;
  for (const auto& slot : it->second.out) {
    for (const auto& key : slot.edges) incident.push_back(EdgeRef{v, key});
  }
  for (const auto& slot : it->second.in) {
    for (const auto& key : slot.edges) {
      // Self-loops already appear in the out list.
      if (key.neighbor() == v) continue;
      incident.push_back(EdgeRef{key.neighbor(), EdgeKey(key.edge_label, v, key.edge_id)});
    }
  }
  for (const auto& e : incident) {
    RemoveEdge(e.src, e.dst(), e.key.edge_label, e.key.edge_id);
  }
  vertices_.erase(v);
  if (removed != nullptr) {
    removed->insert(removed->end(), incident.begin(), incident.end());
  }
  return true;
}

uint64_t GraphTopology::Degree(const VertexId& v, Direction d) const {
  return Adjacency(v).degree(d);
}

std::vector<EdgeKey> GraphTopology::Neighbors(const VertexId& v, Direction d,
                                              std::optional<LabelId> label) const {
  std::vector<EdgeKey> out;
  ForEachNeighbor(v, d, label, [&](const EdgeKey& k) { out.push_back(k); });
  return out;
}

const AdaptiveEdgeCollection* GraphTopology::Collection(const VertexId& v, Direction d,
                                                        LabelId label) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) return nullptr;
  for (const auto& slot : it->second.slots(d)) {
    if (slot.label == label) return &slot.edges;
  }
  return nullptr;
}

std::pair<GraphTopology::VertexMap::const_iterator, GraphTopology::VertexMap::const_iterator>
GraphTopology::Range(std::optional<LabelId> label) const {
  if (!label) return {vertices_.begin(), vertices_.end()};
  auto first = vertices_.lower_bound(VertexId{*label, 0});
  auto last = *label == std::numeric_limits<LabelId>::max()
                  ? vertices_.end()
                  : vertices_.lower_bound(VertexId{static_cast<LabelId>(*label + 1), 0});
  return {first, last};
}

std::optional<VertexId> GraphTopology::LastVertex(LabelId label) const {
  auto [first, last] = Range(label);
  if (first == last) return std::nullopt;
  return std::prev(last)->first;
}

size_t GraphTopology::VertexCount(LabelId label) const {
  auto [first, last] = Range(label);
  return static_cast<size_t>(std::distance(first, last));
}

std::vector<VertexId> GraphTopology::Vertices(std::optional<LabelId> label) const {
  std::vector<VertexId> out;
  ForEachVertex(label, [&](const VertexId& v) { out.push_back(v); });
  return out;
}

MemoryFootprint GraphTopology::Footprint() const {
  MemoryFootprint fp;
  fp.topology_bytes = static_cast<int64_t>(sizeof(GraphTopology)) + counter_->load();
  for (const auto& [v, adj] : vertices_) {
    for (const auto* slots : {&adj.out, &adj.in}) {
      for (const auto& slot : *slots) {
        if (slot.edges.representation() == AdaptiveEdgeCollection::Representation::kSmall) {
          ++fp.small_collections;
        } else {
          ++fp.large_collections;
        }
      }
    }
  }
  return fp;
}

void GraphTopology::Serialize(ByteWriter& out) const {
  out.Put<uint64_t>(vertices_.size());
  for (const auto& [v, adj] : vertices_) out.PutVertex(v);
  out.Put<uint64_t>(edge_count_);
  for (const auto& [v, adj] : vertices_) {
    for (const auto& slot : adj.out) {
      for (const auto& key : slot.edges) {
        out.PutVertex(v);
        out.PutEdgeKey(key);
      }
    }
  }
}

std::unique_ptr<GraphTopology> GraphTopology::Deserialize(ByteReader& in, size_t threshold) {
  auto topo = std::make_unique<GraphTopology>(threshold);
  auto vertices = in.Get<uint64_t>();
  for (uint64_t i = 0; i < vertices; ++i) topo->AddVertex(in.GetVertex());
  auto edges = in.Get<uint64_t>();
  for (uint64_t i = 0; i < edges; ++i) {
    auto src = in.GetVertex();
    auto key = in.GetEdgeKey();
    topo->InsertEdge(src, key.neighbor(), key.edge_label, key.edge_id);
  }
  return topo;
}

std::unique_ptr<GraphTopology> GraphTopology::CloneWithThreshold(size_t threshold) const {
  auto topo = std::make_unique<GraphTopology>(threshold);
  for (const auto& [v, adj] : vertices_) topo->AddVertex(v);
  for (const auto& [v, adj] : vertices_) {
    for (const auto& slot : adj.out) {
      for (const auto& key : slot.edges) {
        topo->InsertEdge(v, key.neighbor(), key.edge_label, key.edge_id);
      }
    }
  }
  return topo;
}

bool operator==(const GraphTopology& a, const GraphTopology& b) {
  if (a.vertices_.size() != b.vertices_.size() || a.edge_count_ != b.edge_count_) return false;
  auto ia = a.vertices_.begin();
  auto ib = b.vertices_.begin();
  for (; ia != a.vertices_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    for (auto d : {Direction::kOut, Direction::kIn}) {
      if (ia->second.degree(d) != ib->second.degree(d)) return false;
      std::vector<EdgeKey> ka, kb;
      a.ForEachNeighbor(ia->first, d, std::nullopt, [&](const EdgeKey& k) { ka.push_back(k); });
      b.ForEachNeighbor(ib->first, d, std::nullopt, [&](const EdgeKey& k) { kb.push_back(k); });
      if (ka != kb) return false;
    }
  }
  return true;
}

}  // namespace arcforge::mem
