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

#include "arcforge/analytics/procedures.h"

#include <fmt/format.h>

#include <cmath>
#include <numeric>

#include "arcforge/common/error.h"
#include "arcforge/db/database.h"

namespace arcforge::analytics {

ProcedureResult PageRank(const GraphSnapshot& graph, const PageRankOptions& options) {
  const size_t n = graph.vertex_count();
  if (n == 0) Throw(ErrorCode::kEmptyGraph, "pagerank needs at least one vertex");
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    Throw(ErrorCode::kInvalidArgument, "damping must lie in (0, 1)");
  }
  if (options.max_iterations == 0) Throw(ErrorCode::kInvalidArgument, "max_iter must be positive");
  if (!(options.tolerance > 0.0)) Throw(ErrorCode::kInvalidArgument, "tol must be positive");

  const double d = options.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n), next(n);
  ProcedureResult result;
  for (uint32_t it = 0; it < options.max_iterations; ++it) {
    double dangling = 0.0;
    for (size_t u = 0; u < n; ++u) {
      if (graph.out_degree(u) == 0) dangling += rank[u];
    }
    std::fill(next.begin(), next.end(), (1.0 - d) * inv_n + d * dangling * inv_n);
    for (size_t u = 0; u < n; ++u) {
      uint64_t deg = graph.out_degree(u);
      if (deg == 0) continue;
      double share = d * rank[u] / static_cast<double>(deg);
      for (uint64_t e = graph.offsets[u]; e < graph.offsets[u + 1]; ++e) {
        next[graph.targets[e]] += share;
      }
    }
    // Pull accumulated rounding back onto the simplex.
    double total = std::accumulate(next.begin(), next.end(), 0.0);
    double delta = 0.0;
    for (size_t v = 0; v < n; ++v) {
      next[v] /= total;
      delta += std::fabs(next[v] - rank[v]);
    }
    rank.swap(next);
    result.iterations = it + 1;
    result.delta = delta;
    if (delta < options.tolerance) break;
  }
  result.vertices = graph.vertices;
  result.values.reserve(n);
  for (double r : rank) result.values.emplace_back(r);
  return result;
}

std::vector<VertexId> ComponentRepresentatives(const GraphSnapshot& graph) {
  const size_t n = graph.vertex_count();
  // Union-find with the smaller dense index as root; dense order is VertexId
  // order, so every root is its component's minimum.
  std::vector<uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (uint32_t u = 0; u < n; ++u) {
    for (uint64_t e = graph.offsets[u]; e < graph.offsets[u + 1]; ++e) {
      uint32_t a = find(u), b = find(graph.targets[e]);
      if (a == b) continue;
      if (a < b) {
        parent[b] = a;
      } else {
        parent[a] = b;
      }
    }
  }
  std::vector<VertexId> reps(n);
  for (uint32_t v = 0; v < n; ++v) reps[v] = graph.vertices[find(v)];
  return reps;
}

ProcedureResult WeaklyConnectedComponents(const GraphSnapshot& graph) {
  ProcedureResult result;
  result.vertices = graph.vertices;
  for (const auto& rep : ComponentRepresentatives(graph)) {
    result.values.emplace_back(static_cast<int64_t>(rep.local));
  }
  return result;
}

size_t WriteBack(db::Writer& writer, const ProcedureResult& result, const std::string& field) {
  const auto& catalog = writer.engine().catalog();
  const auto& labels = catalog.labels(mem::LabelKind::kVertex);
  std::vector<const mem::FieldDef*> target(labels.size(), nullptr);
  bool declared = false;
  for (const auto& label : labels) {
    const auto* def = label.FindField(field);
    if (def == nullptr) continue;
    declared = true;
    target[label.id] = def;
  }
  if (!declared) Throw(ErrorCode::kUnknownField, fmt::format("no vertex label declares '{}'", field));
  // Type check every row up front so a mismatch writes nothing.
  for (size_t i = 0; i < result.vertices.size(); ++i) {
    const auto* def = target[result.vertices[i].label];
    if (def != nullptr) mem::Catalog::Coerce(*def, result.values[i]);
  }
  size_t updated = 0;
  for (size_t i = 0; i < result.vertices.size(); ++i) {
    const auto& v = result.vertices[i];
    const auto* def = target[v.label];
    if (def == nullptr || !writer.engine().HasVertex(v)) continue;
    writer.SetAttribute(v, def->id, result.values[i]);
    ++updated;
  }
  return updated;
}

}  // namespace arcforge::analytics
