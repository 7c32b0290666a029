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

#include "arcforge/db/database.h"

#include <fmt/format.h>

#include <algorithm>
#include <regex>

#include "arcforge/common/binary_io.h"
#include "arcforge/common/error.h"

namespace arcforge::db {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using mem::LabelKind;

bool IsPayloadType(ValueType t) {
  return t == ValueType::kBool || t == ValueType::kInt || t == ValueType::kFloat ||
         t == ValueType::kText;
}

void CheckCollectionName(const std::string& name) {
  static const std::regex kName("[A-Za-z0-9_][A-Za-z0-9_.-]{0,127}");
  if (!std::regex_match(name, kName)) {
    Throw(ErrorCode::kInvalidArgument, fmt::format("'{}' is not a valid collection name", name));
  }
}

std::string HexFloats(std::span<const float> v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt::format("{:a}", v[i]);
  }
  return out + "]";
}

}  // namespace

// ---------------------------------------------------------------------------
// Writer

const mem::MemEngine& Writer::engine() const { return *db_->engine_; }
const vec::VectorStore& Writer::vectors() const { return *db_->vectors_; }

void Writer::Commit(Mutation mutation) {
  if (!db_->Validate(mutation)) return;
  db_->wal_->Append(OpOf(mutation), EncodeMutation(mutation), /*sync=*/false);
  ++records_;
  std::unique_lock lock(db_->state_mu_);
  db_->Apply(mutation);
}

LabelId Writer::AddLabel(LabelKind kind, const std::string& name) {
  Commit(m::AddLabel{kind, name});
  return db_->engine_->catalog().FindLabel(kind, name)->id;
}

LabelId Writer::EnsureLabel(LabelKind kind, const std::string& name) {
  if (const auto* def = engine().catalog().FindLabel(kind, name)) return def->id;
  return AddLabel(kind, name);
}

FieldId Writer::AddField(LabelKind kind, LabelId label, const std::string& name, ValueType type,
                         uint32_t dimension) {
  Commit(m::AddField{kind, label, name, type, dimension});
  return engine().catalog().Label(kind, label).FindField(name)->id;
}

void Writer::CreateVertex(const VertexId& v) { Commit(m::CreateVertex{v}); }

VertexId Writer::CreateVertex(LabelId label) {
  auto last = engine().topology().LastVertex(label);
  VertexId v{label, last ? last->local + 1 : 0};
  Commit(m::CreateVertex{v});
  return v;
}

bool Writer::DeleteVertex(const VertexId& v) {
  size_t before = records_;
  Commit(m::DeleteVertex{v});
  return records_ > before;
}

uint64_t Writer::InsertEdge(const VertexId& src, const VertexId& dst, LabelId label) {
  uint64_t id = db_->next_edge_id_;
  Commit(m::InsertEdge{src, dst, label, id});
  return id;
}

bool Writer::RemoveEdge(const VertexId& src, const VertexId& dst, LabelId label,
                        uint64_t edge_id) {
  size_t before = records_;
  Commit(m::RemoveEdge{src, dst, label, edge_id});
  return records_ > before;
}

void Writer::SetAttribute(const mem::AttrOwner& owner, FieldId field, const PropertyValue& value) {
  Commit(m::SetAttribute{owner, field, value});
}

void Writer::CreateCollection(const std::string& name, const vec::CollectionConfig& config,
                              std::optional<m::Binding> binding) {
  Commit(m::CreateCollection{name, config, binding});
}

void Writer::DeleteCollection(const std::string& name) { Commit(m::DeleteCollection{name}); }

size_t Writer::UpsertPoints(const std::string& collection, std::vector<vec::Point> points) {
  size_t n = points.size();
  if (n == 0) return 0;
  Commit(m::UpsertPoints{collection, std::move(points)});
  return n;
}

size_t Writer::DeletePoints(const std::string& collection, std::vector<VertexId> keys) {
  auto c = vectors().Get(collection);
  size_t live = std::count_if(keys.begin(), keys.end(), [&](const VertexId& k) { return c->Contains(k); });
  Commit(m::DeletePoints{collection, std::move(keys)});
  return live;
}

// ---------------------------------------------------------------------------
// Database

Database::Database(fs::path dir, DatabaseOptions options)
    : dir_(std::move(dir)), options_(options) {
  ResetState();
}

Database::~Database() = default;

std::unique_ptr<Database> Database::Open(const fs::path& dir, DatabaseOptions options) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) Throw(ErrorCode::kIoError, fmt::format("create {}: {}", dir.string(), ec.message()));
  std::unique_ptr<Database> db(new Database(dir, options));
  db->Recover();
  return db;
}

ReadView Database::Read() const {
  return ReadView(this, engine_.get(), vectors_.get(), std::shared_lock(state_mu_));
}

void Database::FinishWrite(const Writer& w) {
  if (w.records() > 0) wal_->Sync();
}

void Database::FinishWriteQuietly(const Writer& w) noexcept {
  try {
    FinishWrite(w);
  } catch (...) {
  }
}

void Database::ResetState() {
  engine_ = std::make_unique<mem::MemEngine>(options_.mem);
  vectors_ = std::make_unique<vec::VectorStore>();
  bindings_.clear();
  next_edge_id_ = 1;
}

void Database::Recover() {
  checkpoints_ = std::make_unique<wal::CheckpointStore>(dir_, options_.checkpoints_kept);
  wal_ = std::make_unique<wal::WalLog>(dir_ / "wal", options_.wal);
  recovery_ = {};
  recovery_.log_truncated = wal_->truncated_on_open();

  std::vector<Lsn> candidates;
  auto current = checkpoints_->Current();
  auto listed = checkpoints_->List();
  if (current && std::find(listed.begin(), listed.end(), *current) != listed.end()) {
    candidates.push_back(*current);
  }
  for (Lsn c : listed) {
    if (!current || c != *current) candidates.push_back(c);
  }

  std::optional<Lsn> base;
  for (Lsn c : candidates) {
    bool log_behind = wal_->last_lsn() < c;
    if (!log_behind && wal_->first_lsn() > c + 1) {
      recovery_.skipped_checkpoints.push_back(
          fmt::format("checkpoint {}: log starts at {}", c, wal_->first_lsn()));
      continue;
    }
    try {
      LoadImage(checkpoints_->Load(c));
      base = c;
      if (log_behind) wal_->ResetTo(c + 1);
      break;
    } catch (const Error& e) {
      recovery_.skipped_checkpoints.push_back(fmt::format("checkpoint {}: {}", c, e.what()));
      ResetState();
    }
  }
  if (!base && wal_->first_lsn() != 1) {
    Throw(ErrorCode::kCorruptCheckpoint,
          fmt::format("no usable checkpoint and the log starts at lsn {}", wal_->first_lsn()));
  }

  checkpoint_lsn_ = base;
  recovery_.checkpoint_lsn = base;
  wal_->Replay(base.value_or(0), [&](const wal::WalRecord& record) {
    Mutation mutation = DecodeMutation(record.op, record.payload);
    try {
      Apply(mutation);
    } catch (const Error& e) {
      Throw(ErrorCode::kCorruptLog,
            fmt::format("replay of lsn {} ({}) failed: {}", record.lsn, wal::WalOpName(record.op), e.what()));
    }
    ++recovery_.replayed;
  });
  recovery_.last_lsn = wal_->last_lsn();
}

Lsn Database::last_lsn() const { return wal_->last_lsn(); }

std::optional<Lsn> Database::checkpoint_lsn() const { return checkpoint_lsn_; }

// Image ---------------------------------------------------------------------

wal::CheckpointImage Database::CaptureImage(Lsn lsn) const {
  wal::CheckpointImage image;
  image.lsn = lsn;

  ByteWriter catalog;
  engine_->catalog().Serialize(catalog);
  catalog.Put<uint64_t>(next_edge_id_);
  catalog.Put<uint32_t>(static_cast<uint32_t>(bindings_.size()));
  for (const auto& [name, b] : bindings_) {
    catalog.PutString(name);
    catalog.Put<uint16_t>(b.label);
    catalog.Put<uint32_t>(b.field);
  }
  image.catalog = catalog.Take();

  ByteWriter topology;
  engine_->topology().Serialize(topology);
  image.topology = topology.Take();

  ByteWriter attributes;
  engine_->store().Serialize(attributes);
  auto names = vectors_->Names();
  attributes.Put<uint32_t>(static_cast<uint32_t>(names.size()));
  for (const auto& name : names) {
    auto c = vectors_->Get(name);
    attributes.PutString(name);
    PutConfig(attributes, c->config());
    c->EncodePayloads(attributes);
    auto encoded = c->Encode();
    image.vectors.push_back({name, std::move(encoded.manifest), std::move(encoded.segment_files)});
  }
  image.attributes = attributes.Take();
  return image;
}

void Database::LoadImage(const wal::CheckpointImage& image) {
  ByteReader catalog_in(image.catalog, ErrorCode::kCorruptCheckpoint);
  auto catalog = mem::Catalog::Deserialize(catalog_in);
  next_edge_id_ = catalog_in.Get<uint64_t>();
  bindings_.clear();
  auto nb = catalog_in.Get<uint32_t>();
  for (uint32_t i = 0; i < nb; ++i) {
    auto name = catalog_in.GetString();
    m::Binding b{};
    b.label = catalog_in.Get<uint16_t>();
    b.field = catalog_in.Get<uint32_t>();
    bindings_[name] = b;
  }
  if (!catalog_in.AtEnd()) Throw(ErrorCode::kCorruptCheckpoint, "trailing bytes in catalog");

  ByteReader topo_in(image.topology, ErrorCode::kCorruptCheckpoint);
  auto topology = mem::GraphTopology::Deserialize(topo_in, options_.mem.edge_threshold);
  if (!topo_in.AtEnd()) Throw(ErrorCode::kCorruptCheckpoint, "trailing bytes in topology image");

  ByteReader attr_in(image.attributes, ErrorCode::kCorruptCheckpoint);
  auto store = mem::AttributeStore::Deserialize(attr_in);
  auto store_vectors = std::make_unique<vec::VectorStore>();
  auto nc = attr_in.Get<uint32_t>();
  if (nc != image.vectors.size()) Throw(ErrorCode::kCorruptCheckpoint, "collection count mismatch");
  for (uint32_t i = 0; i < nc; ++i) {
    auto name = attr_in.GetString();
    auto config = GetConfig(attr_in);
    auto it = std::find_if(image.vectors.begin(), image.vectors.end(),
                           [&](const auto& c) { return c.name == name; });
    if (it == image.vectors.end()) {
      Throw(ErrorCode::kCorruptCheckpoint, fmt::format("collection '{}' has no segment files", name));
    }
    std::shared_ptr<vec::VectorCollection> c =
        vec::VectorCollection::Decode(name, it->manifest, it->segments);
    if (c->dimension() != config.dimension || c->metric() != config.metric) {
      Throw(ErrorCode::kCorruptCheckpoint, fmt::format("collection '{}' config mismatch", name));
    }
    c->DecodePayloads(attr_in);
    store_vectors->Install(std::move(c));
  }
  if (!attr_in.AtEnd()) Throw(ErrorCode::kCorruptCheckpoint, "trailing bytes in attribute image");

  engine_->Restore(std::move(catalog), std::move(topology), std::move(store));
  vectors_ = std::move(store_vectors);
}

Lsn Database::Checkpoint() {
  std::lock_guard checkpoint(checkpoint_mu_);
  wal::CheckpointImage image;
  {
    // Stop the writes for the capture only; readers carry on.
    std::lock_guard writer(writer_mu_);
    wal_->Sync();
    image = CaptureImage(wal_->last_lsn());
    wal_->Roll();
  }
  checkpoints_->Write(image);
  std::lock_guard writer(writer_mu_);
  checkpoint_lsn_ = image.lsn;
  return image.lsn;
}

size_t Database::Prune(Lsn upto) {
  std::lock_guard writer(writer_mu_);
  if (upto == 0) return 0;
  if (!checkpoint_lsn_ || upto > *checkpoint_lsn_) {
    Throw(ErrorCode::kPruneBeyondCheckpoint,
          fmt::format("cannot prune to {}: latest checkpoint is {}", upto,
                      checkpoint_lsn_ ? fmt::format("{}", *checkpoint_lsn_) : "none"));
  }
  return wal_->Prune(upto);
}

// Bindings --------------------------------------------------------------------

std::optional<std::string> Database::BoundCollection(LabelId label, FieldId field) const {
  for (const auto& [name, b] : bindings_) {
    if (b.label == label && b.field == field) return name;
  }
  return std::nullopt;
}

std::vector<std::pair<m::Binding, std::string>> Database::Bindings() const {
  std::vector<std::pair<m::Binding, std::string>> out;
  for (const auto& [name, b] : bindings_) out.emplace_back(b, name);
  return out;
}

vec::Payload Database::PayloadOf(const VertexId& v) const {
  vec::Payload payload;
  const auto& label = engine_->catalog().Label(LabelKind::kVertex, v.label);
  engine_->store().ForEachField(v, [&](FieldId field, const PropertyValue& value) {
    if (IsPayloadType(value.type())) payload.emplace(label.fields[field].name, value);
  });
  return payload;
}

void Database::ApplyBindingUpsert(const VertexId& v, const std::string& collection,
                                  FieldId vector_field) {
  const auto* value = engine_->store().Get(mem::AttrKey{v, vector_field});
  auto c = vectors_->Get(collection);
  if (value == nullptr || value->is_null()) {
    c->DeletePoints({v});
    return;
  }
  c->BulkUpsert({vec::Point{v, value->as_vector(), PayloadOf(v)}});
}

// Validate / Apply -------------------------------------------------------------

bool Database::Validate(Mutation& mutation) const {
  const auto& engine = *engine_;
  const auto& catalog = engine.catalog();
  return std::visit(
      Overloaded{
          [&](m::AddLabel& x) {
            if (x.name.empty()) Throw(ErrorCode::kInvalidArgument, "label name must not be empty");
            if (catalog.FindLabel(x.kind, x.name) != nullptr) {
              Throw(ErrorCode::kInvalidArgument, fmt::format("label '{}' already exists", x.name));
            }
            return true;
          },
          [&](m::AddField& x) {
            // Dry run against a copy of the label's definition.
            mem::Catalog probe = catalog;
            probe.AddField(x.kind, x.label, x.name, x.type, x.dimension);
            return true;
          },
          [&](m::CreateVertex& x) {
            catalog.Label(LabelKind::kVertex, x.v.label);
            if (engine.HasVertex(x.v)) {
              Throw(ErrorCode::kDuplicateVertex, fmt::format("vertex {} already exists", ToString(x.v)));
            }
            return true;
          },
          [&](m::DeleteVertex& x) { return engine.HasVertex(x.v); },
          [&](m::InsertEdge& x) {
            catalog.Label(LabelKind::kEdge, x.label);
            for (const auto& v : {x.src, x.dst}) {
              if (!engine.HasVertex(v)) {
                Throw(ErrorCode::kUnknownVertex, fmt::format("vertex {} does not exist", ToString(v)));
              }
            }
            return !engine.topology().HasEdge(EdgeRef{x.src, EdgeKey(x.label, x.dst, x.edge_id)});
          },
          [&](m::RemoveEdge& x) {
            return engine.HasVertex(x.src) &&
                   engine.topology().HasEdge(EdgeRef{x.src, EdgeKey(x.label, x.dst, x.edge_id)});
          },
          [&](m::SetAttribute& x) {
            x.value = engine.CheckAttribute(x.owner, x.field, x.value);
            return true;
          },
          [&](m::CreateCollection& x) {
            CheckCollectionName(x.name);
            if (x.config.dimension == 0) {
              Throw(ErrorCode::kBadDimension, fmt::format("collection '{}' needs dimension >= 1", x.name));
            }
            if (vectors_->Has(x.name)) {
              Throw(ErrorCode::kDuplicateCollection, fmt::format("collection '{}' already exists", x.name));
            }
            if (x.config.hnsw.m < 2 || x.config.hnsw.ef_construction == 0) {
              Throw(ErrorCode::kInvalidArgument, "hnsw needs m >= 2 and ef_construction >= 1");
            }
            if (x.binding) {
              const auto& field = catalog.Field(LabelKind::kVertex, x.binding->label, x.binding->field);
              if (field.type != ValueType::kVector) {
                Throw(ErrorCode::kTypeMismatch,
                      fmt::format("field '{}' is {}, a vector index needs a vector field", field.name,
                                  ValueTypeName(field.type)));
              }
              if (field.dimension != x.config.dimension) {
                Throw(ErrorCode::kDimensionMismatch,
                      fmt::format("field '{}' has dimension {}, index declares {}", field.name,
                                  field.dimension, x.config.dimension));
              }
              if (BoundCollection(x.binding->label, x.binding->field)) {
                Throw(ErrorCode::kInvalidArgument,
                      fmt::format("field '{}' already has a vector index", field.name));
              }
            }
            return true;
          },
          [&](m::DeleteCollection& x) {
            vectors_->Get(x.name);
            return true;
          },
          [&](m::UpsertPoints& x) {
            auto c = vectors_->Get(x.collection);
            if (bindings_.contains(x.collection)) {
              Throw(ErrorCode::kInvalidArgument,
                    fmt::format("collection '{}' follows a vertex field; set the attribute instead", x.collection));
            }
            for (const auto& p : x.points) {
              if (p.vector.size() != c->dimension()) {
                Throw(ErrorCode::kDimensionMismatch,
                      fmt::format("collection '{}' expects {}-d vectors, point {} has {}", x.collection,
                                  c->dimension(), ToString(p.key), p.vector.size()));
              }
              for (const auto& [field, value] : p.payload) {
                if (!value.is_null() && !IsPayloadType(value.type())) {
                  Throw(ErrorCode::kTypeMismatch,
                        fmt::format("payload field '{}' must be scalar or text", field));
                }
              }
            }
            return true;
          },
          [&](m::DeletePoints& x) {
            vectors_->Get(x.collection);
            if (bindings_.contains(x.collection)) {
              Throw(ErrorCode::kInvalidArgument,
                    fmt::format("collection '{}' follows a vertex field; delete the vertex instead", x.collection));
            }
            return !x.keys.empty();
          },
      },
      mutation);
}

void Database::Apply(const Mutation& mutation) {
  auto& engine = *engine_;
  std::visit(
      Overloaded{
          [&](const m::AddLabel& x) { engine.catalog().AddLabel(x.kind, x.name); },
          [&](const m::AddField& x) {
            engine.catalog().AddField(x.kind, x.label, x.name, x.type, x.dimension);
          },
          [&](const m::CreateVertex& x) { engine.CreateVertex(x.v); },
          [&](const m::DeleteVertex& x) {
            for (const auto& [name, b] : bindings_) {
              if (b.label == x.v.label) vectors_->Get(name)->DeletePoints({x.v});
            }
            engine.DeleteVertex(x.v);
          },
          [&](const m::InsertEdge& x) {
            engine.InsertEdge(x.src, x.dst, x.label, x.edge_id);
            next_edge_id_ = std::max(next_edge_id_, x.edge_id + 1);
          },
          [&](const m::RemoveEdge& x) { engine.RemoveEdge(x.src, x.dst, x.label, x.edge_id); },
          [&](const m::SetAttribute& x) {
            engine.SetAttribute(x.owner, x.field, x.value);
            const auto* v = std::get_if<VertexId>(&x.owner);
            if (v == nullptr) return;
            const std::string* field_name = nullptr;
            for (const auto& [name, b] : bindings_) {
              if (b.label != v->label) continue;
              if (b.field == x.field) {
                ApplyBindingUpsert(*v, name, b.field);
                continue;
              }
              if (!x.value.is_null() && !IsPayloadType(x.value.type())) continue;
              if (field_name == nullptr) {
                field_name = &engine.catalog().Field(LabelKind::kVertex, v->label, x.field).name;
              }
              vectors_->Get(name)->UpdatePayload(*v, *field_name, x.value);
            }
          },
          [&](const m::CreateCollection& x) {
            auto c = vectors_->CreateCollection(x.name, x.config);
            if (!x.binding) return;
            bindings_[x.name] = *x.binding;
            std::vector<vec::Point> backfill;
            engine.topology().ForEachVertex(x.binding->label, [&](const VertexId& v) {
              const auto* value = engine.store().Get(mem::AttrKey{v, x.binding->field});
              if (value != nullptr && !value->is_null()) {
                backfill.push_back({v, value->as_vector(), PayloadOf(v)});
              }
            });
            c->BulkUpsert(backfill);
          },
          [&](const m::DeleteCollection& x) {
            vectors_->DeleteCollection(x.name);
            bindings_.erase(x.name);
          },
          [&](const m::UpsertPoints& x) { vectors_->Get(x.collection)->BulkUpsert(x.points); },
          [&](const m::DeletePoints& x) { vectors_->Get(x.collection)->DeletePoints(x.keys); },
      },
      mutation);
}

// Digest ------------------------------------------------------------------------

std::string Database::StateDigest() const {
  auto view = Read();
  const auto& engine = *engine_;
  const auto& catalog = engine.catalog();
  std::string out = catalog.ToJson().dump();
  out += fmt::format("\nnext_edge_id {}\n", next_edge_id_);
  auto field_name = [&](LabelKind kind, LabelId label, FieldId f) {
    return catalog.Field(kind, label, f).name;
  };
  engine.topology().ForEachVertex(std::nullopt, [&](const VertexId& v) {
    out += fmt::format("v {}", ToString(v));
    engine.store().ForEachField(v, [&](FieldId f, const PropertyValue& value) {
      out += fmt::format(" {}={}", field_name(LabelKind::kVertex, v.label, f),
                         value.type() == ValueType::kVector ? HexFloats(value.as_vector())
                                                            : value.ToJson().dump());
    });
    out += '\n';
    engine.topology().ForEachNeighbor(v, Direction::kOut, std::nullopt, [&](const EdgeKey& k) {
      out += fmt::format("  e {} -> {} #{}", k.edge_label, ToString(k.neighbor()), k.edge_id);
      EdgeRef e{v, k};
      engine.store().ForEachField(e, [&](FieldId f, const PropertyValue& value) {
        out += fmt::format(" {}={}", field_name(LabelKind::kEdge, k.edge_label, f),
                           value.type() == ValueType::kVector ? HexFloats(value.as_vector())
                                                              : value.ToJson().dump());
      });
      out += '\n';
    });
  });
  for (const auto& name : vectors_->Names()) {
    auto c = vectors_->Get(name);
    const auto& cfg = c->config();
    out += fmt::format("c {} dim={} metric={} m={} efc={}", name, cfg.dimension,
                       vec::MetricName(cfg.metric), cfg.hnsw.m, cfg.hnsw.ef_construction);
    if (auto it = bindings_.find(name); it != bindings_.end()) {
      out += fmt::format(" bind={}.{}", it->second.label, it->second.field);
    }
    out += '\n';
    for (const auto& p : c->Snapshot()) {
      out += fmt::format("  p {} {}", ToString(p.key), HexFloats(p.vector));
      for (const auto& [f, value] : p.payload) out += fmt::format(" {}={}", f, value.ToJson().dump());
      out += '\n';
    }
  }
  return out;
}

}  // namespace arcforge::db
