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
#include <string_view>
#include <vector>

#include "arcforge/common/binary_io.h"
#include "arcforge/common/types.h"
#include "arcforge/common/value.h"

namespace arcforge::mem {

enum class LabelKind : uint8_t { kVertex = 0, kEdge = 1 };

struct FieldDef {
  FieldId id = 0;
  std::string name;
  ValueType type = ValueType::kNull;
  uint32_t dimension = 0;  // vectors only

  friend bool operator==(const FieldDef&, const FieldDef&) = default;
};

struct LabelDef {
  LabelId id = 0;
  std::string name;
  std::vector<FieldDef> fields;  // index == FieldId

  const FieldDef* FindField(std::string_view field_name) const;
  friend bool operator==(const LabelDef&, const LabelDef&) = default;
};

/// Schema: vertex labels, edge labels, and their typed fields. Ids are dense
/// and assigned in declaration order, so replaying the same declarations
/// always yields the same ids.
class Catalog {
 public:
  /// The key of every vertex is addressable as this pseudo-field.
  static constexpr std::string_view kIdField = "id";

  LabelId AddLabel(LabelKind kind, std::string_view name);
  FieldId AddField(LabelKind kind, LabelId label, std::string_view name, ValueType type,
                   uint32_t dimension = 0);

  const LabelDef* FindLabel(LabelKind kind, std::string_view name) const;
  const LabelDef& Label(LabelKind kind, LabelId id) const;  // throws UnknownLabel
  const FieldDef& Field(LabelKind kind, LabelId label, FieldId field) const;  // UnknownField
  bool HasLabel(LabelKind kind, LabelId id) const;
  const std::vector<LabelDef>& labels(LabelKind kind) const {
    return kind == LabelKind::kVertex ? vertex_labels_ : edge_labels_;
  }

  /// Checks a value against a field and returns it in stored form (an Int
  /// assigned to a Float field is widened). Null is always accepted.
  /// Throws TypeMismatch or DimensionMismatch.
  static PropertyValue Coerce(const FieldDef& field, const PropertyValue& value);

  static ValueType ParseType(std::string_view name);

  void Serialize(ByteWriter& out) const;
  static Catalog Deserialize(ByteReader& in);

  /// Schema file form: {"vertex_labels": [{"name", "fields": [{"name",
  /// "type", "dim"?}]}], "edge_labels": [...]}.
  Json ToJson() const;

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  std::vector<LabelDef>& mutable_labels(LabelKind kind) {
    return kind == LabelKind::kVertex ? vertex_labels_ : edge_labels_;
  }

  std::vector<LabelDef> vertex_labels_;
  std::vector<LabelDef> edge_labels_;
};

}  // namespace arcforge::mem
