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

#include <string>
#include <string_view>
#include <vector>

#include "arcforge/query/executor.h"

namespace arcforge::db {
class Database;
}

namespace arcforge::query {

struct QueryResult {
  std::vector<std::string> columns;
  std::vector<std::vector<Datum>> rows;
  std::vector<OperatorStats> operators;
  WriteStats writes;
  std::string plan;  // optimized plan rendering
  bool explain = false;
  double elapsed_ms = 0.0;
  mem::Catalog catalog;  // schema at execution, for rendering

  /// Tab-separated with a header line, or an aligned table.
  std::string Render(bool tsv = false) const;
  Json ToJson() const;
};

/// Embeddable query interface over a database. Read statements run under a
/// read view; statements that write run inside one Database::Write batch.
class QueryEngine {
 public:
  explicit QueryEngine(db::Database& db) : db_(db) {}

  QueryResult Run(std::string_view text, const Params& params = {},
                  const ExecOptions& options = {});
  /// Plan rendering without executing. With optimize=false the rewrite is
  /// skipped.
  std::string Explain(std::string_view text, const Params& params = {}, bool optimize = true);

 private:
  db::Database& db_;
};

}  // namespace arcforge::query
