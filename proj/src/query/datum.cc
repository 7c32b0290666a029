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

#include "arcforge/query/datum.h"

#include <fmt/format.h>

namespace arcforge::query {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string VertexName(const VertexId& v, const mem::Catalog& catalog) {
  if (!catalog.HasLabel(mem::LabelKind::kVertex, v.label)) return ToString(v);
  return fmt::format("{}:{}", catalog.Label(mem::LabelKind::kVertex, v.label).name, v.local);
}

}  // namespace

int CompareDatum(const Datum& a, const Datum& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  return std::visit(
      Overloaded{
          [&](const PropertyValue& x) { return CompareValues(x, std::get<PropertyValue>(b)); },
          [&](const VertexId& x) {
            auto c = x <=> std::get<VertexId>(b);
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
          },
          [&](const EdgeRef& x) {
            auto c = x <=> std::get<EdgeRef>(b);
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
          },
      },
      a);
}

std::string RenderDatum(const Datum& d, const mem::Catalog& catalog) {
  return std::visit(
      Overloaded{
          [](const PropertyValue& v) { return v.ToString(); },
          [&](const VertexId& v) { return VertexName(v, catalog); },
          [&](const EdgeRef& e) {
            std::string label = catalog.HasLabel(mem::LabelKind::kEdge, e.key.edge_label)
                                    ? catalog.Label(mem::LabelKind::kEdge, e.key.edge_label).name
                                    : std::to_string(e.key.edge_label);
            return fmt::format("{}:{}->{}#{}", label, VertexName(e.src, catalog),
                               VertexName(e.dst(), catalog), e.key.edge_id);
          },
      },
      d);
}

Json DatumToJson(const Datum& d, const mem::Catalog& catalog) {
  if (const auto* v = std::get_if<PropertyValue>(&d)) return v->ToJson();
  return RenderDatum(d, catalog);
}

}  // namespace arcforge::query
