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

// Random mutation histories for recovery tests. A history starts with a
// schema step and then mixes graph, attribute, and vector operations. The
// generator tracks which vertices, edges, and collections exist so nearly
// every op is valid; the few that are not fail the same way everywhere.

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include <fmt/format.h>

#include "arcforge/common/error.h"
#include "arcforge/db/database.h"

namespace arcforge::testing {

namespace fs = std::filesystem;

enum class HistKind {
  kSchema,
  kCreateVertex,
  kDeleteVertex,
  kInsertEdge,
  kRemoveEdge,
  kSetVertexAttr,
  kSetEdgeAttr,
  kCreateCollection,
  kDeleteCollection,
  kUpsertPoints,
  kDeletePoints,
};

struct HistOp {
  HistKind kind = HistKind::kSchema;
  VertexId a, b;
  uint64_t edge_id = 0;
  std::string field;
  PropertyValue value;
  std::vector<vec::Point> points;
  std::vector<VertexId> keys;
};

// Schema: person(name text, age int, score float, emb vector[4]) with a
// cosine index on emb, edge label knows(weight float), plus a free-standing
// collection "free" that comes and goes.
inline constexpr uint32_t kEmbDim = 4;
inline constexpr uint32_t kFreeDim = 3;

class HistoryGenerator {
 public:
  explicit HistoryGenerator(uint64_t seed) : rng_(seed) {}

  std::vector<HistOp> Make(size_t n) {
    std::vector<HistOp> ops;
    ops.emplace_back();  // kSchema
    while (ops.size() < n) ops.push_back(Next());
    return ops;
  }

 private:
  size_t Pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }
  double Uniform() { return std::uniform_real_distribution<double>(0, 1)(rng_); }
  FloatVector Vec(uint32_t dim) {
    FloatVector v(dim);
    for (auto& x : v) x = static_cast<float>(Uniform() * 2 - 1);
    return v;
  }

  HistOp Next() {
    HistOp op;
    double r = Uniform();
    if (vertices_.size() < 3 || r < 0.22) {
      op.kind = HistKind::kCreateVertex;
      op.a = VertexId{0, next_local_++};
      vertices_.push_back(op.a);
    } else if (r < 0.27) {
      op.kind = HistKind::kDeleteVertex;
      size_t i = Pick(vertices_.size());
      op.a = vertices_[i];
      vertices_.erase(vertices_.begin() + i);
      std::erase_if(edges_, [&](const auto& e) { return e.src == op.a || e.dst == op.a; });
    } else if (r < 0.47) {
      op.kind = HistKind::kInsertEdge;
      op.a = vertices_[Pick(vertices_.size())];
      op.b = vertices_[Pick(vertices_.size())];
      edges_.push_back({op.a, op.b, next_edge_id_++});
    } else if (r < 0.52 && !edges_.empty()) {
      op.kind = HistKind::kRemoveEdge;
      size_t i = Pick(edges_.size());
      op.a = edges_[i].src;
      op.b = edges_[i].dst;
      op.edge_id = edges_[i].id;
      edges_.erase(edges_.begin() + i);
    } else if (r < 0.75) {
      op.kind = HistKind::kSetVertexAttr;
      op.a = vertices_[Pick(vertices_.size())];
      switch (Pick(5)) {
        case 0: op.field = "name"; op.value = fmt::format("n{}", Pick(50)); break;
        case 1: op.field = "age"; op.value = int64_t(Pick(90)); break;
        case 2: op.field = "score"; op.value = Uniform(); break;
        case 3: op.field = "emb"; op.value = Vec(kEmbDim); break;
        default: op.field = "emb"; op.value = PropertyValue(); break;
      }
    } else if (r < 0.82 && !edges_.empty()) {
      op.kind = HistKind::kSetEdgeAttr;
      const auto& e = edges_[Pick(edges_.size())];
      op.a = e.src;
      op.b = e.dst;
      op.edge_id = e.id;
      op.field = "weight";
      op.value = Uniform();
    } else if (r < 0.84) {
      op.kind = free_exists_ ? HistKind::kDeleteCollection : HistKind::kCreateCollection;
      free_exists_ = !free_exists_;
    } else if (r < 0.95 && free_exists_) {
      op.kind = HistKind::kUpsertPoints;
      size_t n = 1 + Pick(4);
      for (size_t i = 0; i < n; ++i) {
        vec::Payload payload{{"tag", int64_t(Pick(5))}};
        op.points.push_back({VertexId{9, Pick(40)}, Vec(kFreeDim), payload});
      }
    } else if (free_exists_) {
      op.kind = HistKind::kDeletePoints;
      op.keys = {VertexId{9, Pick(40)}, VertexId{9, Pick(40)}};
    } else {
      op.kind = HistKind::kCreateVertex;
      op.a = VertexId{0, next_local_++};
      vertices_.push_back(op.a);
    }
    return op;
  }

  struct Edge {
    VertexId src, dst;
    uint64_t id;
  };
  std::mt19937_64 rng_;
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  uint64_t next_local_ = 0;
  uint64_t next_edge_id_ = 1;
  bool free_exists_ = false;
};

inline void ApplyHistOp(db::Writer& w, const HistOp& op) {
  using mem::LabelKind;
  const auto& catalog = w.engine().catalog();
  auto person = [&] { return catalog.FindLabel(LabelKind::kVertex, "person")->id; };
  auto knows = [&] { return catalog.FindLabel(LabelKind::kEdge, "knows")->id; };
  try {
    switch (op.kind) {
      case HistKind::kSchema: {
        LabelId p = w.AddLabel(LabelKind::kVertex, "person");
        w.AddField(LabelKind::kVertex, p, "name", ValueType::kText);
        w.AddField(LabelKind::kVertex, p, "age", ValueType::kInt);
        w.AddField(LabelKind::kVertex, p, "score", ValueType::kFloat);
        FieldId emb = w.AddField(LabelKind::kVertex, p, "emb", ValueType::kVector, kEmbDim);
        LabelId k = w.AddLabel(LabelKind::kEdge, "knows");
        w.AddField(LabelKind::kEdge, k, "weight", ValueType::kFloat);
        vec::CollectionConfig config;
        config.dimension = kEmbDim;
        config.hnsw = {8, 32};
        config.seal_threshold = 16;
        w.CreateCollection("person_emb", config, db::m::Binding{p, emb});
        break;
      }
      case HistKind::kCreateVertex: w.CreateVertex(op.a); break;
      case HistKind::kDeleteVertex: w.DeleteVertex(op.a); break;
      case HistKind::kInsertEdge: w.InsertEdge(op.a, op.b, knows()); break;
      case HistKind::kRemoveEdge: w.RemoveEdge(op.a, op.b, knows(), op.edge_id); break;
      case HistKind::kSetVertexAttr: {
        auto field = catalog.Label(LabelKind::kVertex, person()).FindField(op.field)->id;
        w.SetAttribute(op.a, field, op.value);
        break;
      }
      case HistKind::kSetEdgeAttr: {
        auto field = catalog.Label(LabelKind::kEdge, knows()).FindField(op.field)->id;
        w.SetAttribute(EdgeRef{op.a, EdgeKey(knows(), op.b, op.edge_id)}, field, op.value);
        break;
      }
      case HistKind::kCreateCollection: {
        vec::CollectionConfig config;
        config.dimension = kFreeDim;
        config.metric = vec::Metric::kEuclidean;
        config.hnsw = {6, 24};
        config.seal_threshold = 8;
        w.CreateCollection("free", config);
        break;
      }
      case HistKind::kDeleteCollection: w.DeleteCollection("free"); break;
      case HistKind::kUpsertPoints: w.UpsertPoints("free", op.points); break;
      case HistKind::kDeletePoints: w.DeletePoints("free", op.keys); break;
    }
  } catch (const Error&) {
    // Invalid in this state; rejected identically on every path.
  }
}

/// Applies ops[0, n) in one write per op.
inline void ApplyPrefix(db::Database& db, const std::vector<HistOp>& ops, size_t n) {
  for (size_t i = 0; i < n && i < ops.size(); ++i) {
    db.Write([&](db::Writer& w) { ApplyHistOp(w, ops[i]); });
  }
}

/// Fresh scratch directory, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    path_ = fs::temp_directory_path() /
            fmt::format("arcforge-{}-{}-{}", tag, ::getpid(), counter()++);
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  static int& counter() {
    static int c = 0;
    return c;
  }
  fs::path path_;
};

}  // namespace arcforge::testing
