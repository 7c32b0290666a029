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
#include <variant>

#include "arcforge/common/types.h"
#include "arcforge/common/value.h"
#include "arcforge/mem/catalog.h"

namespace arcforge::query {

/// A single value flowing through the executor: a property value, a vertex,
/// or an edge.
using Datum = std::variant<PropertyValue, VertexId, EdgeRef>;

inline bool IsNull(const Datum& d) {
  const auto* v = std::get_if<PropertyValue>(&d);
  return v != nullptr && v->is_null();
}

/// Total order for sorting and grouping: values (CompareValues order), then
/// vertices, then edges.
int CompareDatum(const Datum& a, const Datum& b);

/// person:12, knows:person:1->person:2#7, or the value's text form.
std::string RenderDatum(const Datum& d, const mem::Catalog& catalog);
Json DatumToJson(const Datum& d, const mem::Catalog& catalog);

}  // namespace arcforge::query
