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

#include "arcforge/analytics/snapshot.h"

#include <algorithm>

namespace arcforge::analytics {

std::optional<uint32_t> GraphSnapshot::IndexOf(const VertexId& v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return std::nullopt;
  return static_cast<uint32_t>(it - vertices.begin());
}

GraphSnapshot GraphSnapshot::Take(const mem::GraphTopology& topology,
                                  std::optional<LabelId> edge_label) {
  GraphSnapshot g;
  g.vertices = topology.Vertices();
  g.offsets.reserve(g.vertices.size() + 1);
  g.offsets.push_back(0);
  g.targets.reserve(topology.edge_count());
  for (const auto& v : g.vertices) {
    topology.ForEachNeighbor(v, Direction::kOut, edge_label, [&](const EdgeKey& key) {
      g.targets.push_back(*g.IndexOf(key.neighbor()));
    });
    g.offsets.push_back(g.targets.size());
  }
  return g;
}

}  // namespace arcforge::analytics
