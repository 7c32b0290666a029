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

#include "arcforge/common/value.h"

#include <fmt/format.h>

#include <algorithm>

#include "arcforge/common/error.h"

namespace arcforge {

std::string_view ValueTypeName(ValueType type) {
  switch (type) {
    case ValueType::kNull: return "null";
    case ValueType::kBool: return "bool";
    case ValueType::kInt: return "int";
    case ValueType::kFloat: return "float";
    case ValueType::kText: return "text";
    case ValueType::kJson: return "json";
    case ValueType::kVector: return "vector";
  }
  return "?";
}

double PropertyValue::as_number() const {
  if (type() == ValueType::kInt) return static_cast<double>(as_int());
  if (type() == ValueType::kFloat) return as_float();
  Throw(ErrorCode::kTypeMismatch,
        fmt::format("expected a number, got {}", ValueTypeName(type())));
}

size_t PropertyValue::ApproxBytes() const {
  size_t bytes = sizeof(PropertyValue);
  switch (type()) {
    case ValueType::kText: bytes += as_text().capacity(); break;
    case ValueType::kJson: bytes += as_json().dump().size(); break;
    case ValueType::kVector: bytes += as_vector().capacity() * sizeof(float); break;
    default: break;
  }
  return bytes;
}

std::string PropertyValue::ToString() const {
  switch (type()) {
    case ValueType::kNull: return "null";
    case ValueType::kBool: return as_bool() ? "true" : "false";
    case ValueType::kInt: return std::to_string(as_int());
    case ValueType::kFloat: return fmt::format("{}", as_float());
    case ValueType::kText: return as_text();
    case ValueType::kJson: return as_json().dump();
    case ValueType::kVector: return fmt::format("[{}]", fmt::join(as_vector(), ", "));
  }
  return {};
}

Json PropertyValue::ToJson() const {
  switch (type()) {
    case ValueType::kNull: return nullptr;
    case ValueType::kBool: return as_bool();
    case ValueType::kInt: return as_int();
    case ValueType::kFloat: return as_float();
    case ValueType::kText: return as_text();
    case ValueType::kJson: return as_json();
    case ValueType::kVector: return as_vector();
  }
  return nullptr;
}

namespace {

int TypeRank(ValueType t) {
  switch (t) {
    case ValueType::kNull: return 0;
    case ValueType::kBool: return 1;
    case ValueType::kInt:
    case ValueType::kFloat: return 2;
    case ValueType::kText: return 3;
    case ValueType::kJson: return 4;
    case ValueType::kVector: return 5;
  }
  return 6;
}

template <typename T>
int Cmp(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

int CompareNumbers(const PropertyValue& a, const PropertyValue& b) {
  if (a.type() == ValueType::kInt && b.type() == ValueType::kInt) {
    return Cmp(a.as_int(), b.as_int());
  }
  return Cmp(a.as_number(), b.as_number());
}

}  // namespace

int CompareValues(const PropertyValue& a, const PropertyValue& b) {
  int ra = TypeRank(a.type());
  int rb = TypeRank(b.type());
  if (ra != rb) return Cmp(ra, rb);
  switch (a.type()) {
    case ValueType::kNull: return 0;
    case ValueType::kBool: return Cmp(a.as_bool(), b.as_bool());
    case ValueType::kInt:
    case ValueType::kFloat: return CompareNumbers(a, b);
    case ValueType::kText: return Cmp(a.as_text(), b.as_text());
    case ValueType::kJson: return Cmp(a.as_json().dump(), b.as_json().dump());
    case ValueType::kVector: {
      const auto& x = a.as_vector();
      const auto& y = b.as_vector();
      if (std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end())) return -1;
      if (std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end())) return 1;
      return 0;
    }
  }
  return 0;
}

int CompareValuesStrict(const PropertyValue& a, const PropertyValue& b) {
  int c = CompareValues(a, b);
  if (c != 0) return c;
  return Cmp(static_cast<int>(a.type()), static_cast<int>(b.type()));
}

PropertyValue ValueFromJson(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return {};
    case Json::value_t::boolean: return j.get<bool>();
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned: return j.get<int64_t>();
    case Json::value_t::number_float: return j.get<double>();
    case Json::value_t::string: return j.get<std::string>();
    case Json::value_t::array: {
      bool numeric = !j.empty() && std::all_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_number();
      });
      if (numeric) {
        FloatVector v;
        v.reserve(j.size());
        for (const auto& e : j) v.push_back(e.get<float>());
        return v;
      }
      return JsonDoc{j};
    }
    default: return JsonDoc{j};
  }
}

}  // namespace arcforge
