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

/// One CSV file of a load manifest.
struct FileSpec {
  fs::path path;  // relative paths resolve against the manifest's directory
  mem::LabelKind kind = mem::LabelKind::kVertex;
  std::string label;
  std::string id_column = "id";          // vertices
  std::string src_column, dst_column;    // edges
  std::string src_label, dst_label;      // edges
  std::vector<std::pair<std::string, std::string>> columns;  // csv column -> field
};

/// {"delimiter": "|", "max_reject_ratio": 0.01, "schema": {...},
///  "files": [{"path", "kind": "vertex"|"edge", "label", "id", "src", "dst",
///  "src_label", "dst_label", "columns": {"csv column": "field"}}]}
///
/// "schema" takes the same form as the schema file of `init`.
struct LoadManifest {
  char delimiter = ',';
  double max_reject_ratio = 0.0;
  Json schema;
  std::vector<FileSpec> files;

  static LoadManifest Read(const fs::path& path);
};

/// Declares labels, fields and bound vector collections:
/// {"vertex_labels": [{"name", "fields": [{"name", "type", "dim"?}]}],
///  "edge_labels": [...], "collections": [{"name", "label", "field",
///  "metric"?, "m"?, "ef_construction"?}]}.
/// Existing labels and fields with the same type are kept; a field that
/// exists with another type is a TypeMismatch.
void ApplySchema(db::Writer& w, const Json& schema);

struct DegreeSummary {
  uint64_t vertices = 0;
  uint64_t max = 0;
  double median = 0.0;
  double mean = 0.0;
  uint64_t p99 = 0;

  Json ToJson() const;
};
/// Degree distribution over every vertex in one direction.
DegreeSummary Degrees(const mem::MemEngine& engine, Direction direction);

struct LoadReport {
  uint64_t vertices = 0;
  uint64_t edges = 0;
  uint64_t vectors = 0;
  uint64_t rows = 0;
  uint64_t rejected = 0;
  double reject_ratio() const { return rows == 0 ? 0.0 : static_cast<double>(rejected) / rows; }
  fs::path rejects_path;
  DegreeSummary out_degrees;
  DegreeSummary in_degrees;

  Json ToJson() const;
};

struct LoadOptions {
  std::optional<fs::path> rejects_path;  // default: <manifest>.rejects
  size_t batch_rows = 10000;              // rows per durable write batch
};

/// Ingests every file through the write path. A row that fails to parse or
/// validate is skipped whole and written to the rejects file. Throws for
/// manifest, schema and I/O problems.
LoadReport Load(db::Database& db, const fs::path& manifest_path, const LoadOptions& options = {});

/// Parses a CSV cell as a value for `field`. An empty cell is null.
PropertyValue ParseCell(const std::string& cell, const mem::FieldDef& field);

}  // namespace arcforge::cli
