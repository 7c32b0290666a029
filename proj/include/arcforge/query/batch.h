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

#include <vector>

#include "arcforge/query/datum.h"
#include "arcforge/query/plan.h"

namespace arcforge::query {

/// Typed value array: vertices, edges, or property values.
class Column {
 public:
  explicit Column(ColumnKind kind = ColumnKind::kValue) : kind_(kind) {}

  ColumnKind kind() const { return kind_; }
  size_t size() const;

  Datum Get(size_t i) const;
  const VertexId& vertex(size_t i) const { return vertices_[i]; }
  const EdgeRef& edge(size_t i) const { return edges_[i]; }
  const PropertyValue& value(size_t i) const { return values_[i]; }

  void PushVertex(const VertexId& v) { vertices_.push_back(v); }
  void PushEdge(const EdgeRef& e) { edges_.push_back(e); }
  void PushValue(PropertyValue v) { values_.push_back(std::move(v)); }
  /// Throws RuntimeError if the datum's kind does not fit the column.
  void Push(Datum d);
  void PushFrom(const Column& other, size_t i);

  void Clear();

 private:
  ColumnKind kind_;
  std::vector<VertexId> vertices_;
  std::vector<EdgeRef> edges_;
  std::vector<PropertyValue> values_;
};

/// Rows in columnar form; every column holds `rows` entries.
struct RowBatch {
  std::vector<Column> columns;
  size_t rows = 0;

  static RowBatch ForSchema(const Schema& schema);

  /// Copies row `row` of `src` into the leading columns of this batch. The
  /// row is not counted until the caller adds `rows`.
  void CopyPrefix(const RowBatch& src, size_t row);
  void Clear();
};

}  // namespace arcforge::query
