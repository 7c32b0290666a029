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

#include "arcforge/mem/catalog.h"

#include <fmt/format.h>

#include <limits>

#include "arcforge/common/error.h"

namespace arcforge::mem {

namespace {

std::string_view KindName(LabelKind kind) {
  return kind == LabelKind::kVertex ? "vertex" : "edge";
}

}  // namespace

const FieldDef* LabelDef::FindField(std::string_view field_name) const {
  for (const auto& f : fields) {
    if (f.name == field_name) return &f;
  }
  return nullptr;
}

LabelId Catalog::AddLabel(LabelKind kind, std::string_view name) {
  if (name.empty()) Throw(ErrorCode::kInvalidArgument, "label name must not be empty");
  if (FindLabel(kind, name) != nullptr) {
    Throw(ErrorCode::kInvalidArgument,
          fmt::format("{} label '{}' already exists", KindName(kind), name));
  }
  auto& labels = mutable_labels(kind);
  if (labels.size() >= std::numeric_limits<LabelId>::max()) {
    Throw(ErrorCode::kInvalidArgument, "too many labels");
  }
  LabelDef def;
  def.id = static_cast<LabelId>(labels.size());
  def.name = std::string(name);
  labels.push_back(std::move(def));
  return labels.back().id;
}

FieldId Catalog::AddField(LabelKind kind, LabelId label, std::string_view name,
                          ValueType type, uint32_t dimension) {
  if (!HasLabel(kind, label)) {
    Throw(ErrorCode::kUnknownLabel, fmt::format("{} label {} does not exist", KindName(kind), label));
  }
  if (name.empty() || name == kIdField) {
    Throw(ErrorCode::kInvalidArgument, fmt::format("'{}' is not a valid field name", name));
  }
  if (type == ValueType::kNull) {
    Throw(ErrorCode::kInvalidArgument, "fields cannot be declared with the null type");
  }
  if (type == ValueType::kVector && dimension == 0) {
    Throw(ErrorCode::kBadDimension, fmt::format("vector field '{}' needs a dimension >= 1", name));
  }
  auto& def = mutable_labels(kind)[label];
  if (def.FindField(name) != nullptr) {
    Throw(ErrorCode::kInvalidArgument,
          fmt::format("field '{}' already declared on '{}'", name, def.name));
  }
  FieldDef field;
  field.id = static_cast<FieldId>(def.fields.size());
  field.name = std::string(name);
  field.type = type;
  field.dimension = type == ValueType::kVector ? dimension : 0;
  def.fields.push_back(std::move(field));
  return def.fields.back().id;
}

const LabelDef* Catalog::FindLabel(LabelKind kind, std::string_view name) const {
  for (const auto& l : labels(kind)) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

bool Catalog::HasLabel(LabelKind kind, LabelId id) const { return id < labels(kind).size(); }

const LabelDef& Catalog::Label(LabelKind kind, LabelId id) const {
  if (!HasLabel(kind, id)) {
    Throw(ErrorCode::kUnknownLabel, fmt::format("{} label {} does not exist", KindName(kind), id));
  }
  return labels(kind)[id];
}

const FieldDef& Catalog::Field(LabelKind kind, LabelId label, FieldId field) const {
  const auto& def = Label(kind, label);
  if (field >= def.fields.size()) {
    Throw(ErrorCode::kUnknownField, fmt::format("field {} is not declared on '{}'", field, def.name));
  }
  return def.fields[field];
}

PropertyValue Catalog::Coerce(const FieldDef& field, const PropertyValue& value) {
  if (value.is_null()) return value;
  if (field.type == ValueType::kFloat && value.type() == ValueType::kInt) {
    return static_cast<double>(value.as_int());
  }
  if (value.type() != field.type) {
    Throw(ErrorCode::kTypeMismatch,
          fmt::format("field '{}' holds {}, got {}", field.name, ValueTypeName(field.type),
                      ValueTypeName(value.type())));
  }
  if (field.type == ValueType::kVector && value.as_vector().size() != field.dimension) {
    Throw(ErrorCode::kDimensionMismatch,
          fmt::format("field '{}' holds {}-d vectors, got {}", field.name, field.dimension,
                      value.as_vector().size()));
  }
  return value;
}

ValueType Catalog::ParseType(std::string_view name) {
  if (name == "bool" || name == "BOOL") return ValueType::kBool;
  if (name == "int" || name == "INT" || name == "int64") return ValueType::kInt;
  if (name == "float" || name == "FLOAT" || name == "double") return ValueType::kFloat;
  if (name == "text" || name == "TEXT" || name == "string") return ValueType::kText;
  if (name == "json" || name == "JSON") return ValueType::kJson;
  if (name == "vector" || name == "ARRAY" || name == "array") return ValueType::kVector;
  Throw(ErrorCode::kInvalidArgument, fmt::format("unknown field type '{}'", name));
}

void Catalog::Serialize(ByteWriter& out) const {
  for (auto kind : {LabelKind::kVertex, LabelKind::kEdge}) {
    out.Put<uint32_t>(static_cast<uint32_t>(labels(kind).size()));
    for (const auto& l : labels(kind)) {
      out.PutString(l.name);
      out.Put<uint32_t>(static_cast<uint32_t>(l.fields.size()));
      for (const auto& f : l.fields) {
        out.PutString(f.name);
        out.Put<uint8_t>(static_cast<uint8_t>(f.type));
        out.Put<uint32_t>(f.dimension);
      }
    }
  }
}

Catalog Catalog::Deserialize(ByteReader& in) {
  Catalog catalog;
  for (auto kind : {LabelKind::kVertex, LabelKind::kEdge}) {
    auto n = in.Get<uint32_t>();
    for (uint32_t i = 0; i < n; ++i) {
      auto label = catalog.AddLabel(kind, in.GetString());
      auto fields = in.Get<uint32_t>();
      for (uint32_t j = 0; j < fields; ++j) {
        auto name = in.GetString();
        auto type = static_cast<ValueType>(in.Get<uint8_t>());
        auto dim = in.Get<uint32_t>();
        catalog.AddField(kind, label, name, type, dim);
      }
    }
  }
  return catalog;
}

Json Catalog::ToJson() const {
  Json out = Json::object();
  for (auto kind : {LabelKind::kVertex, LabelKind::kEdge}) {
    Json arr = Json::array();
    for (const auto& l : labels(kind)) {
      Json fields = Json::array();
      for (const auto& f : l.fields) {
        Json jf = {{"name", f.name}, {"type", ValueTypeName(f.type)}};
        if (f.type == ValueType::kVector) jf["dim"] = f.dimension;
        fields.push_back(std::move(jf));
      }
      arr.push_back({{"name", l.name}, {"fields", std::move(fields)}});
    }
    out[kind == LabelKind::kVertex ? "vertex_labels" : "edge_labels"] = std::move(arr);
  }
  return out;
}

}  // namespace arcforge::mem
