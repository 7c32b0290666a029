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


#include "loader.h"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>

#include "arcforge/common/error.h"
#include "arcforge/vec/distance.h"
#include "csv.h"

namespace arcforge::cli {

using mem::LabelKind;

namespace {

[[noreturn]] void Bad(const std::string& msg) { Throw(ErrorCode::kInvalidArgument, msg); }

std::string Str(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) Bad(fmt::format("{}: missing string \"{}\"", where, key));
  return j[key].get<std::string>();
}

LabelKind KindOf(const std::string& s) {
  if (s == "vertex") return LabelKind::kVertex;
  if (s == "edge") return LabelKind::kEdge;
  Bad(fmt::format("kind must be \"vertex\" or \"edge\", got \"{}\"", s));
}

const mem::LabelDef& RequireLabel(const mem::Catalog& catalog, LabelKind kind, const std::string& name) {
  const auto* def = catalog.FindLabel(kind, name);
  if (def == nullptr) {
    Throw(ErrorCode::kUnknownLabel,
          fmt::format("{} label '{}' is not declared", kind == LabelKind::kVertex ? "vertex" : "edge", name));
  }
  return *def;
}

const mem::FieldDef& RequireField(const mem::LabelDef& label, const std::string& name) {
  const auto* f = label.FindField(name);
  if (f == nullptr) Throw(ErrorCode::kUnknownField, fmt::format("field '{}' is not declared on '{}'", name, label.name));
  return *f;
}

uint64_t ParseKey(const std::string& cell) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || p != cell.data() + cell.size() || cell.empty()) {
    Bad(fmt::format("'{}' is not a vertex id", cell));
  }
  return v;
}

void WriteRejects(const fs::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) Throw(ErrorCode::kIoError, fmt::format("cannot write rejects file {}", path.string()));
  for (const auto& l : lines) out << l << '\n';
}

}  // namespace

LoadManifest LoadManifest::Read(const fs::path& path) {
  Json j;
  try {
    j = Json::parse(ReadFile(path));
  } catch (const Json::parse_error& e) {
    Bad(fmt::format("manifest {}: {}", path.string(), e.what()));
  }
  if (!j.is_object()) Bad("manifest must be a JSON object");
  LoadManifest m;
  if (j.contains("delimiter")) {
    auto d = j["delimiter"].get<std::string>();
    if (d == "\\t" || d == "tab") d = "\t";
    if (d.size() != 1) Bad("delimiter must be one character");
    m.delimiter = d[0];
  }
  if (j.contains("max_reject_ratio")) m.max_reject_ratio = j["max_reject_ratio"].get<double>();
  if (j.contains("schema")) m.schema = j["schema"];
  if (!j.contains("files") || !j["files"].is_array()) Bad("manifest needs a \"files\" array");
  fs::path base = path.parent_path();
  for (const auto& f : j["files"]) {
    FileSpec s;
    std::string where = "manifest file entry";
    fs::path p = Str(f, "path", where);
    s.path = p.is_absolute() ? p : base / p;
    s.kind = KindOf(Str(f, "kind", where));
    s.label = Str(f, "label", where);
    if (s.kind == LabelKind::kVertex) {
      if (f.contains("id")) s.id_column = f["id"].get<std::string>();
    } else {
      s.src_column = Str(f, "src", where);
      s.dst_column = Str(f, "dst", where);
      s.src_label = Str(f, "src_label", where);
      s.dst_label = Str(f, "dst_label", where);
    }
    if (f.contains("columns")) {
      for (const auto& [col, field] : f["columns"].items()) s.columns.emplace_back(col, field.get<std::string>());
    }
    m.files.push_back(std::move(s));
  }
  return m;
}

void ApplySchema(db::Writer& w, const Json& schema) {
  if (schema.is_null()) return;
  if (!schema.is_object()) Bad("schema must be a JSON object");
  for (auto [key, kind] : {std::pair{"vertex_labels", LabelKind::kVertex}, {"edge_labels", LabelKind::kEdge}}) {
    if (!schema.contains(key)) continue;
    for (const auto& l : schema[key]) {
      std::string name = Str(l, "name", key);
      LabelId id = w.EnsureLabel(kind, name);
      if (!l.contains("fields")) continue;
      for (const auto& f : l["fields"]) {
        std::string fname = Str(f, "name", name);
        ValueType type = mem::Catalog::ParseType(Str(f, "type", fname));
        uint32_t dim = f.contains("dim") ? f["dim"].get<uint32_t>() : 0;
        const auto* existing = w.engine().catalog().Label(kind, id).FindField(fname);
        if (existing != nullptr) {
          if (existing->type != type || (type == ValueType::kVector && existing->dimension != dim)) {
            Throw(ErrorCode::kTypeMismatch, fmt::format("field '{}.{}' already declared as {}", name, fname,
                                                        ValueTypeName(existing->type)));
          }
          continue;
        }
        w.AddField(kind, id, fname, type, dim);
      }
    }
  }
  if (!schema.contains("collections")) return;
  for (const auto& c : schema["collections"]) {
    std::string name = Str(c, "name", "collection");
    if (w.vectors().Has(name)) continue;
    const auto& label = RequireLabel(w.engine().catalog(), LabelKind::kVertex, Str(c, "label", name));
    const auto& field = RequireField(label, Str(c, "field", name));
    if (field.type != ValueType::kVector) {
      Throw(ErrorCode::kTypeMismatch, fmt::format("collection '{}': field '{}' is not a vector", name, field.name));
    }
    vec::CollectionConfig config;
    config.dimension = field.dimension;
    if (c.contains("metric")) config.metric = vec::ParseMetric(c["metric"].get<std::string>());
    if (c.contains("m")) config.hnsw.m = c["m"].get<uint32_t>();
    if (c.contains("ef_construction")) config.hnsw.ef_construction = c["ef_construction"].get<uint32_t>();
    w.CreateCollection(name, config, db::m::Binding{label.id, field.id});
  }
}

PropertyValue ParseCell(const std::string& cell, const mem::FieldDef& field) {
  if (cell.empty()) return {};
  auto fail = [&]() -> PropertyValue {
    Throw(ErrorCode::kTypeMismatch,
          fmt::format("'{}' is not a valid {} for field '{}'", cell, ValueTypeName(field.type), field.name));
  };
  switch (field.type) {
    case ValueType::kBool:
      if (cell == "true" || cell == "1") return PropertyValue(true);
      if (cell == "false" || cell == "0") return PropertyValue(false);
      return fail();
    case ValueType::kInt: {
      int64_t v = 0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || p != cell.data() + cell.size()) return fail();
      return PropertyValue(v);
    }
    case ValueType::kFloat: {
      double v = 0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || p != cell.data() + cell.size()) return fail();
      return PropertyValue(v);
    }
    case ValueType::kText: return PropertyValue(cell);
    case ValueType::kJson:
      try {
        return PropertyValue(JsonDoc{Json::parse(cell)});
      } catch (const Json::parse_error&) {
        return fail();
      }
    case ValueType::kVector: {
      // Components separated by ';' or spaces, optionally in brackets.
      FloatVector v;
      size_t i = 0, n = cell.size();
      if (cell.front() == '[' && cell.back() == ']') {
        i = 1;
        n = cell.size() - 1;
      }
      while (i < n) {
        while (i < n && (cell[i] == ';' || cell[i] == ' ' || cell[i] == ',')) ++i;
        if (i >= n) break;
        float x = 0;
        auto [p, ec] = std::from_chars(cell.data() + i, cell.data() + n, x);
        if (ec != std::errc()) return fail();
        v.push_back(x);
        i = static_cast<size_t>(p - cell.data());
      }
      return PropertyValue(std::move(v));
    }
    case ValueType::kNull: break;
  }
  return fail();
}

DegreeSummary Degrees(const mem::MemEngine& engine, Direction direction) {
  std::vector<uint64_t> degrees;
  engine.topology().ForEachVertex(std::nullopt, [&](const VertexId& v) {
    degrees.push_back(engine.Degree(v, direction));
  });
  DegreeSummary s;
  s.vertices = degrees.size();
  if (degrees.empty()) return s;
  std::sort(degrees.begin(), degrees.end());
  uint64_t total = 0;
  for (auto d : degrees) total += d;
  size_t n = degrees.size();
  s.max = degrees.back();
  s.median = n % 2 ? degrees[n / 2] : (degrees[n / 2 - 1] + degrees[n / 2]) / 2.0;
  s.mean = static_cast<double>(total) / n;
  s.p99 = degrees[std::min(n - 1, n * 99 / 100)];
  return s;
}

Json DegreeSummary::ToJson() const {
  return Json{{"max", max}, {"median", median}, {"mean", mean}, {"p99", p99}};
}

Json LoadReport::ToJson() const {
  return Json{{"vertices", vertices},
              {"edges", edges},
              {"vectors", vectors},
              {"rows", rows},
              {"rejected", rejected},
              {"reject_ratio", reject_ratio()},
              {"rejects_file", rejects_path.string()},
              {"out_degree", out_degrees.ToJson()},
              {"in_degree", in_degrees.ToJson()}};
}

namespace {

// A CSV file bound to the catalog: column indices and the fields they feed.
struct BoundFile {
  const FileSpec* spec = nullptr;
  LabelId label = 0, src_label = 0, dst_label = 0;
  size_t key = 0, src = 0, dst = 0;
  std::vector<std::pair<size_t, mem::FieldDef>> fields;
  size_t width = 0;
};

BoundFile Bind(const FileSpec& spec, const std::vector<std::string>& header, const mem::Catalog& catalog) {
  auto column = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) Bad(fmt::format("{}: no column '{}' in header", spec.path.string(), name));
    return static_cast<size_t>(it - header.begin());
  };
  BoundFile b;
  b.spec = &spec;
  b.width = header.size();
  const auto& label = RequireLabel(catalog, spec.kind, spec.label);
  b.label = label.id;
  if (spec.kind == LabelKind::kVertex) {
    b.key = column(spec.id_column);
  } else {
    b.src = column(spec.src_column);
    b.dst = column(spec.dst_column);
    b.src_label = RequireLabel(catalog, LabelKind::kVertex, spec.src_label).id;
    b.dst_label = RequireLabel(catalog, LabelKind::kVertex, spec.dst_label).id;
  }
  for (const auto& [col, field] : spec.columns) b.fields.emplace_back(column(col), RequireField(label, field));
  return b;
}

}  // namespace

LoadReport Load(db::Database& db, const fs::path& manifest_path, const LoadOptions& options) {
  auto manifest = LoadManifest::Read(manifest_path);
  db.Write([&](db::Writer& w) { ApplySchema(w, manifest.schema); });

  LoadReport report;
  report.rejects_path = options.rejects_path.value_or(fs::path(manifest_path.string() + ".rejects"));
  std::vector<std::string> rejects;

  for (const auto& spec : manifest.files) {
    std::ifstream in(spec.path);
    if (!in) Throw(ErrorCode::kIoError, fmt::format("cannot open {}", spec.path.string()));
    CsvReader reader(in, manifest.delimiter);
    std::vector<std::string> header;
    if (!reader.Next(header)) continue;  // empty file: no header, no rows
    if (!header.empty() && header[0].starts_with("\xEF\xBB\xBF")) header[0].erase(0, 3);
    BoundFile bound = [&] {
      auto view = db.Read();
      return Bind(spec, header, view.engine().catalog());
    }();

    bool done = false;
    std::vector<std::string> row;
    while (!done) {
      db.Write([&](db::Writer& w) {
        for (size_t n = 0; n < options.batch_rows; ++n) {
          if (!reader.Next(row)) {
            done = true;
            return;
          }
          if (row.size() == 1 && row[0].empty()) continue;  // blank line
          ++report.rows;
          try {
            if (row.size() != bound.width) {
              Bad(fmt::format("expected {} columns, got {}", bound.width, row.size()));
            }
            // Parse and check everything before the first write so a bad
            // row leaves nothing behind.
            std::vector<std::pair<FieldId, PropertyValue>> values;
            for (const auto& [col, field] : bound.fields) {
              auto v = mem::Catalog::Coerce(field, ParseCell(row[col], field));
              if (!v.is_null()) values.emplace_back(field.id, std::move(v));
            }
            const auto& engine = w.engine();
            if (spec.kind == LabelKind::kVertex) {
              VertexId v{bound.label, ParseKey(row[bound.key])};
              if (engine.HasVertex(v)) Throw(ErrorCode::kDuplicateVertex, fmt::format("vertex {} exists", v.local));
              w.CreateVertex(v);
              for (const auto& [f, value] : values) {
                w.SetAttribute(v, f, value);
                if (value.type() == ValueType::kVector) ++report.vectors;
              }
              ++report.vertices;
            } else {
              VertexId s{bound.src_label, ParseKey(row[bound.src])};
              VertexId d{bound.dst_label, ParseKey(row[bound.dst])};
              for (const auto& v : {s, d}) {
                if (!engine.HasVertex(v)) Throw(ErrorCode::kUnknownVertex, fmt::format("no vertex {}", v.local));
              }
              uint64_t id = w.InsertEdge(s, d, bound.label);
              EdgeRef e{s, EdgeKey(bound.label, d, id)};
              for (const auto& [f, value] : values) w.SetAttribute(e, f, value);
              ++report.edges;
            }
          } catch (const Error& e) {
            ++report.rejected;
            rejects.push_back(fmt::format("{}:{}\t{}", spec.path.string(), reader.line(), e.what()));
          }
        }
      });
    }
  }
  WriteRejects(report.rejects_path, rejects);
  auto view = db.Read();
  report.out_degrees = Degrees(view.engine(), Direction::kOut);
  report.in_degrees = Degrees(view.engine(), Direction::kIn);
  return report;
}

}  // namespace arcforge::cli
