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

// Reference implementations for the graph procedures, written over a plain
// edge list without the library's snapshot code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "arcforge/mem/graph_topology.h"

namespace arcforge::testing {

struct Graph {
  std::unique_ptr<mem::GraphTopology> topology;
  std::vector<VertexId> vertices;
  std::vector<std::pair<size_t, size_t>> edges;  // indices into vertices
};

// Two vertex labels, possibly parallel edges and isolated vertices.
Graph RandomGraph(std::mt19937_64& rng, size_t max_n) {
  Graph g;
  g.topology = std::make_unique<mem::GraphTopology>();
  size_t n = 1 + rng() % max_n;
  for (size_t i = 0; i < n; ++i) {
    VertexId v{static_cast<LabelId>(rng() % 2), i};
    g.topology->AddVertex(v);
    g.vertices.push_back(v);
  }
  std::sort(g.vertices.begin(), g.vertices.end());
  size_t m = rng() % (3 * n + 1);
  for (size_t e = 0; e < m; ++e) {
    size_t s = rng() % n, t = rng() % n;
    if (g.topology->InsertEdge(g.vertices[s], g.vertices[t], 0, e + 1)) g.edges.emplace_back(s, t);
  }
  return g;
}

// Power iteration on the dense Google matrix with the same stopping rule.
std::vector<double> DensePageRank(const Graph& g, double d, uint32_t max_iter, double tol) {
  const size_t n = g.vertices.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  std::vector<double> outdeg(n, 0.0);
  for (auto [s, t] : g.edges) outdeg[s] += 1;
  for (auto [s, t] : g.edges) m[t][s] += 1.0 / outdeg[s];
  for (size_t j = 0; j < n; ++j) {
    if (outdeg[j] == 0) {
      for (size_t i = 0; i < n; ++i) m[i][j] = 1.0 / n;
    }
  }
  for (auto& row : m) {
    for (auto& x : row) x = d * x + (1.0 - d) / n;
  }
  std::vector<double> r(n, 1.0 / n), next(n);
  for (uint32_t it = 0; it < max_iter; ++it) {
    for (size_t i = 0; i < n; ++i) {
      next[i] = 0;
      for (size_t j = 0; j < n; ++j) next[i] += m[i][j] * r[j];
    }
    double delta = 0;
    for (size_t i = 0; i < n; ++i) delta += std::abs(next[i] - r[i]);
    r.swap(next);
    if (delta < tol) break;
  }
  return r;
}

std::vector<VertexId> UnionFindLabels(const Graph& g) {
  std::vector<size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [s, t] : g.edges) parent[find(s)] = find(t);
  std::map<size_t, VertexId> least;
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    auto [it, fresh] = least.try_emplace(find(i), g.vertices[i]);
    if (!fresh) it->second = std::min(it->second, g.vertices[i]);
  }
  std::vector<VertexId> out;
  for (size_t i = 0; i < g.vertices.size(); ++i) out.push_back(least[find(i)]);
  return out;
}

}  // namespace arcforge::testing
