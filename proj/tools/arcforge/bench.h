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
#include <string>
#include <vector>

#include "arcforge/common/file_util.h"
#include "arcforge/common/value.h"
#include "arcforge/db/database.h"

namespace arcforge::cli {

/// The four query shapes of the traversal suite.
const std::vector<std::string>& TraversalQueries();

struct TraversalOptions {
  size_t runs = 5;
  size_t threshold = 128;  // adaptive configuration
  size_t warmup = 1;
};

/// Runs every traversal query `runs` times against the data directory opened
/// once with all-Large collections (threshold 0) and once adaptive. Reports
/// per-run milliseconds per configuration.
Json BenchTraversal(const fs::path& dir, const db::DatabaseOptions& base, const TraversalOptions& options);

/// Topology bytes of the loaded graph rebuilt under thresholds 0, 64, 128,
/// 256 and unbounded, plus `extra` if given.
Json BenchFootprint(const db::Database& db, std::optional<size_t> extra);

struct VectorBenchOptions {
  std::string collection;   // empty: first collection of the database
  size_t synthetic = 0;     // >0: a standalone random collection of this size
  uint32_t dim = 64;
  size_t k = 10;
  size_t queries = 100;
  size_t runs = 1;
  size_t ef_search = 0;     // 0: default
  uint64_t seed = 7;
};

/// Recall@k against an exhaustive scan and mean search latency.
Json BenchVector(const db::Database* db, const VectorBenchOptions& options);

/// Human-readable rendering of a bench report.
std::string RenderBench(const Json& report);

}  // namespace arcforge::cli
