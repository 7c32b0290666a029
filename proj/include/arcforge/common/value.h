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
#include <variant>
#include <vector>

#include "json.hpp"

namespace arcforge {

using Json = nlohmann::json;

enum class ValueType : uint8_t {
  kNull = 0,
  kBool = 1,
  kInt = 2,
  kFloat = 3,
  kText = 4,
  kJson = 5,
  kVector = 6,
};

std::string_view ValueTypeName(ValueType type);

/// Document-typed attribute. Wrapped so it never collides with the scalar
/// alternatives of PropertyValue.
struct JsonDoc {
  Json doc;
  friend bool operator==(const JsonDoc&, const JsonDoc&) = default;
};

using FloatVector = std::vector<float>;

/// Attribute value: scalars, text, JSON documents, and fixed-length float32
/// vectors. operator== is exact (an Int 1 differs from a Float 1.0); use
/// CompareValues for query semantics.
class PropertyValue {
 public:
  using Storage = std::variant<std::monostate, bool, int64_t, double,
                               std::string, JsonDoc, FloatVector>;

  PropertyValue() = default;
  PropertyValue(std::monostate) {}
  PropertyValue(bool v) : data_(v) {}
  PropertyValue(int v) : data_(int64_t{v}) {}
  PropertyValue(int64_t v) : data_(v) {}
  PropertyValue(uint64_t v) : data_(static_cast<int64_t>(v)) {}
  PropertyValue(double v) : data_(v) {}
  PropertyValue(std::string v) : data_(std::move(v)) {}
  PropertyValue(const char* v) : data_(std::string(v)) {}
  PropertyValue(JsonDoc v) : data_(std::move(v)) {}
  PropertyValue(FloatVector v) : data_(std::move(v)) {}

  ValueType type() const { return static_cast<ValueType>(data_.index()); }
  bool is_null() const { return type() == ValueType::kNull; }
  bool is_numeric() const {
    return type() == ValueType::kInt || type() == ValueType::kFloat;
  }

  bool as_bool() const { return std::get<bool>(data_); }
  int64_t as_int() const { return std::get<int64_t>(data_); }
  double as_float() const { return std::get<double>(data_); }
  /// Int or Float widened to double.
  double as_number() const;
  const std::string& as_text() const { return std::get<std::string>(data_); }
  const Json& as_json() const { return std::get<JsonDoc>(data_).doc; }
  const FloatVector& as_vector() const { return std::get<FloatVector>(data_); }

  const Storage& storage() const { return data_; }

  /// Rough heap + inline size, used for cache accounting.
  size_t ApproxBytes() const;

  std::string ToString() const;
  Json ToJson() const;

  friend bool operator==(const PropertyValue&, const PropertyValue&) = default;

 private:
  Storage data_;
};

/// Total order used by ORDER BY and the payload index:
/// null < bool < numbers (compared numerically) < text < json < vector.
/// Int and Float with the same numeric value compare equal.
int CompareValues(const PropertyValue& a, const PropertyValue& b);

/// Strict variant of CompareValues that also separates Int from Float on
/// numeric ties, so it is consistent with operator==.
int CompareValuesStrict(const PropertyValue& a, const PropertyValue& b);

/// Converts a JSON value into the closest PropertyValue. Arrays of numbers
/// become vectors; other arrays and objects stay JSON documents.
PropertyValue ValueFromJson(const Json& j);

}  // namespace arcforge
