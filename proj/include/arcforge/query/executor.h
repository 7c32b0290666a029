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

#include "arcforge/query/batch.h"
#include "arcforge/query/planner.h"
#include "arcforge/vec/hnsw.h"

namespace arcforge::mem {
class MemEngine;
}
namespace arcforge::db {
class Writer;
}

namespace arcforge::query {

struct ExecOptions {
  size_t batch_size = 1024;
  size_t ef_search = vec::kDefaultEfSearch;
  bool optimize = true;
};

struct OperatorStats {
  std::string name;
  uint64_t rows_in = 0;
  uint64_t rows_out = 0;
  uint64_t batches_out = 0;
};

struct WriteStats {
  uint64_t vertices_created = 0;
  uint64_t edges_created = 0;
  uint64_t properties_set = 0;
};

/// State an execution reads from. `writer` is set only for mutating plans.
struct ExecContext {
  const mem::MemEngine* engine = nullptr;
  const vec::VectorStore* vectors = nullptr;
  const db::Database* db = nullptr;
  db::Writer* writer = nullptr;
  const Params* params = nullptr;
  ExecOptions options;
};

struct ExecResult {
  std::vector<std::string> columns;
  std::vector<std::vector<Datum>> rows;
  std::vector<OperatorStats> operators;  // source first, matching Plan::Pipeline
  WriteStats writes;
};

/// Runs a plan push-style: the first operator receives one empty row, every
/// operator pushes batches of at most batch_size rows downstream, and Limit
/// tells its producers to stop once it has its rows.
ExecResult Execute(const Plan& plan, const ExecContext& ctx);

/// Evaluates an expression on one row. Throws RuntimeError for type errors
/// and unbound parameters.
Datum Eval(const BoundExpr& e, const RowBatch& batch, size_t row, const ExecContext& ctx);
/// Evaluates a row-independent expression.
PropertyValue EvalConstant(const BoundExpr& e, const ExecContext& ctx);

/// Distance used by vector_distance: lower is closer. Cosine gives
/// 1 - cos, euclidean the L2 distance, dot the negated inner product.
double VectorDistance(vec::Metric metric, std::span<const float> a, std::span<const float> b);

}  // namespace arcforge::query
