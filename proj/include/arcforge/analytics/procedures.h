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
#include <string>
#include <vector>

#include "arcforge/analytics/snapshot.h"
#include "arcforge/common/value.h"

namespace arcforge::db {
class Writer;
}

namespace arcforge::analytics {

struct PageRankOptions {
  double damping = 0.85;
  uint32_t max_iterations = 50;
  double tolerance = 1e-8;
};

/// One row per vertex in the procedure's scope, in VertexId order.
struct ProcedureResult {
  std::vector<VertexId> vertices;
  std::vector<PropertyValue> values;
  uint32_t iterations = 0;
  double delta = 0.0;  // last L1 change (PageRank)
};

/// Power iteration. Mass of vertices without out-edges is spread uniformly
/// over all vertices. Stops after max_iterations or once the L1 change of an
/// iteration drops below tolerance. Throws EmptyGraph and InvalidArgument.
ProcedureResult PageRank(const GraphSnapshot& graph, const PageRankOptions& options = {});

/// Labels every vertex with the smallest VertexId of its weakly connected
/// component. Values are the representative's local id.
ProcedureResult WeaklyConnectedComponents(const GraphSnapshot& graph);
/// Representative of each vertex, by dense index.
std::vector<VertexId> ComponentRepresentatives(const GraphSnapshot& graph);

/// Writes result rows into the field named `field` through the write path.
/// Vertices whose label does not declare the field are skipped. Throws
/// UnknownField if no label declares it and TypeMismatch if a declaring label
/// has a type the values cannot be stored as; both are checked before the
/// first write. Returns the number of vertices updated.
size_t WriteBack(db::Writer& writer, const ProcedureResult& result, const std::string& field);

}  // namespace arcforge::analytics
