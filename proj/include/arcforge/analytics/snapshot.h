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
#include <optional>
#include <vector>

#include "arcforge/common/types.h"
#include "arcforge/mem/graph_topology.h"

namespace arcforge::analytics {

/// Frozen CSR copy of the topology taken at call time. Procedures run on it,
/// so writes that land while they compute do not change their input.
///
/// Vertices are in VertexId order and addressed by dense index. Parallel
/// edges appear once per edge.
struct GraphSnapshot {
  std::vector<VertexId> vertices;
  std::vector<uint64_t> offsets;  // size n + 1, into targets
  std::vector<uint32_t> targets;  // out-neighbors by dense index

  size_t vertex_count() const { return vertices.size(); }
  size_t edge_count() const { return targets.size(); }
  uint64_t out_degree(size_t i) const { return offsets[i + 1] - offsets[i]; }

  /// Dense index of a vertex, if present.
  std::optional<uint32_t> IndexOf(const VertexId& v) const;

  /// Snapshot of every vertex and edge, optionally restricted to one edge
  /// label.
  static GraphSnapshot Take(const mem::GraphTopology& topology,
                            std::optional<LabelId> edge_label = std::nullopt);
};

}  // namespace arcforge::analytics
