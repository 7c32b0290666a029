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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arcforge/common/types.h"
#include "arcforge/mem/attribute_store.h"
#include "arcforge/mem/catalog.h"
#include "arcforge/vec/collection.h"
#include "arcforge/wal/log.h"

namespace arcforge::db {

namespace m {

struct AddLabel {
  mem::LabelKind kind;
  std::string name;
};
struct AddField {
  mem::LabelKind kind;
  LabelId label;
  std::string name;
  ValueType type;
  uint32_t dimension;
};
struct CreateVertex {
  VertexId v;
};
struct DeleteVertex {
  VertexId v;
};
struct InsertEdge {
  VertexId src, dst;
  LabelId label;
  uint64_t edge_id;
};
struct RemoveEdge {
  VertexId src, dst;
  LabelId label;
  uint64_t edge_id;
};
struct SetAttribute {
  mem::AttrOwner owner;
  FieldId field;
  PropertyValue value;
};
/// A vertex label's vector field feeding a collection.
struct Binding {
  LabelId label;
  FieldId field;
  friend bool operator==(const Binding&, const Binding&) = default;
};
struct CreateCollection {
  std::string name;
  vec::CollectionConfig config;
  std::optional<Binding> binding;
};
struct DeleteCollection {
  std::string name;
};
struct UpsertPoints {
  std::string collection;
  std::vector<vec::Point> points;
};
struct DeletePoints {
  std::string collection;
  std::vector<VertexId> keys;
};

}  // namespace m

/// One logged state change. Every mutation reaches the engine through the
/// same Apply path, live or replayed.
using Mutation = std::variant<m::AddLabel, m::AddField, m::CreateVertex, m::DeleteVertex,
                              m::InsertEdge, m::RemoveEdge, m::SetAttribute,
                              m::CreateCollection, m::DeleteCollection, m::UpsertPoints,
                              m::DeletePoints>;

wal::WalOp OpOf(const Mutation& mutation);
std::string EncodeMutation(const Mutation& mutation);
/// Throws CorruptLog on a malformed payload.
Mutation DecodeMutation(wal::WalOp op, std::string_view payload);

void PutConfig(ByteWriter& out, const vec::CollectionConfig& config);
vec::CollectionConfig GetConfig(ByteReader& in);

}  // namespace arcforge::db
