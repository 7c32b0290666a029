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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace arcforge {

using LabelId = uint16_t;
using FieldId = uint32_t;
using Lsn = uint64_t;

/// Vertex key: a label (vertex type) plus an id unique within that label.
struct VertexId {
  LabelId label = 0;
  uint64_t local = 0;

  friend constexpr auto operator<=>(const VertexId&, const VertexId&) = default;
};

std::string ToString(const VertexId& v);

/// One adjacency entry. Ordered by (edge label, neighbor, edge id); this is
/// the iteration order of every edge container. Laid out as 24 bytes so the
/// footprint of the compact representation stays honest.
struct EdgeKey {
  uint64_t neighbor_local = 0;
  uint64_t edge_id = 0;
  LabelId edge_label = 0;
  LabelId neighbor_label = 0;

  constexpr EdgeKey() = default;
  constexpr EdgeKey(LabelId label, VertexId neighbor, uint64_t id)
      : neighbor_local(neighbor.local),
        edge_id(id),
        edge_label(label),
        neighbor_label(neighbor.label) {}

  constexpr VertexId neighbor() const {
    return VertexId{neighbor_label, neighbor_local};
  }

  friend constexpr bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend constexpr std::strong_ordering operator<=>(const EdgeKey& a,
                                                    const EdgeKey& b) {
    if (auto c = a.edge_label <=> b.edge_label; c != 0) return c;
    if (auto c = a.neighbor_label <=> b.neighbor_label; c != 0) return c;
    if (auto c = a.neighbor_local <=> b.neighbor_local; c != 0) return c;
    return a.edge_id <=> b.edge_id;
  }
};

static_assert(sizeof(EdgeKey) == 24);

enum class Direction : uint8_t { kOut, kIn };

/// Identifies an edge by its source and the forward adjacency entry. Edge
/// attributes are stored per edge under this key.
struct EdgeRef {
  VertexId src;
  EdgeKey key;

  VertexId dst() const { return key.neighbor(); }

  friend constexpr bool operator==(const EdgeRef&, const EdgeRef&) = default;
  friend constexpr std::strong_ordering operator<=>(const EdgeRef& a,
                                                    const EdgeRef& b) {
    if (auto c = a.src <=> b.src; c != 0) return c;
    return a.key <=> b.key;
  }
};

inline size_t HashCombine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace arcforge

template <>
struct std::hash<arcforge::VertexId> {
  size_t operator()(const arcforge::VertexId& v) const noexcept {
    return arcforge::HashCombine(std::hash<uint64_t>{}(v.local), v.label);
  }
};

template <>
struct std::hash<arcforge::EdgeRef> {
  size_t operator()(const arcforge::EdgeRef& e) const noexcept {
    size_t h = std::hash<arcforge::VertexId>{}(e.src);
    h = arcforge::HashCombine(h, std::hash<arcforge::VertexId>{}(e.key.neighbor()));
    h = arcforge::HashCombine(h, e.key.edge_label);
    return arcforge::HashCombine(h, std::hash<uint64_t>{}(e.key.edge_id));
  }
};
