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

#include "arcforge/query/batch.h"

#include "arcforge/common/error.h"

namespace arcforge::query {

size_t Column::size() const {
  switch (kind_) {
    case ColumnKind::kVertex: return vertices_.size();
    case ColumnKind::kEdge: return edges_.size();
    case ColumnKind::kValue: return values_.size();
  }
  return 0;
}

Datum Column::Get(size_t i) const {
  switch (kind_) {
    case ColumnKind::kVertex: return vertices_[i];
    case ColumnKind::kEdge: return edges_[i];
    case ColumnKind::kValue: return values_[i];
  }
  return PropertyValue();
}

void Column::Push(Datum d) {
  switch (kind_) {
    case ColumnKind::kVertex:
      if (auto* v = std::get_if<VertexId>(&d)) return PushVertex(*v);
      break;
    case ColumnKind::kEdge:
      if (auto* e = std::get_if<EdgeRef>(&d)) return PushEdge(*e);
      break;
    case ColumnKind::kValue:
      if (auto* v = std::get_if<PropertyValue>(&d)) return PushValue(std::move(*v));
      break;
  }
  Throw(ErrorCode::kRuntimeError, "value does not fit its column");
}

void Column::PushFrom(const Column& other, size_t i) {
  switch (kind_) {
    case ColumnKind::kVertex: vertices_.push_back(other.vertices_[i]); return;
    case ColumnKind::kEdge: edges_.push_back(other.edges_[i]); return;
    case ColumnKind::kValue: values_.push_back(other.values_[i]); return;
  }
}

void Column::Clear() {
  vertices_.clear();
  edges_.clear();
  values_.clear();
}

RowBatch RowBatch::ForSchema(const Schema& schema) {
  RowBatch b;
  b.columns.reserve(schema.size());
  for (const auto& c : schema) b.columns.emplace_back(c.kind);
  return b;
}

void RowBatch::CopyPrefix(const RowBatch& src, size_t row) {
  for (size_t c = 0; c < src.columns.size(); ++c) columns[c].PushFrom(src.columns[c], row);
}

void RowBatch::Clear() {
  for (auto& c : columns) c.Clear();
  rows = 0;
}

}  // namespace arcforge::query
