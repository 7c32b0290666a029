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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <type_traits>
#include <vector>

#include "arcforge/common/file_util.h"
#include "arcforge/db/mutation.h"
#include "arcforge/mem/mem_engine.h"
#include "arcforge/vec/vector_store.h"
#include "arcforge/wal/checkpoint.h"
#include "arcforge/wal/log.h"

namespace arcforge::db {

struct DatabaseOptions {
  mem::MemEngineOptions mem;
  wal::WalOptions wal;
  size_t checkpoints_kept = 2;
};

struct RecoveryReport {
  std::optional<Lsn> checkpoint_lsn;  // base image used, if any
  Lsn replayed = 0;                   // records applied on top of it
  Lsn last_lsn = 0;
  bool log_truncated = false;
  std::vector<std::string> skipped_checkpoints;  // reasons, newest first
};

class Database;

/// Read access to a consistent state: holds the state lock in shared mode.
class ReadView {
 public:
  const mem::MemEngine& engine() const { return *engine_; }
  const vec::VectorStore& vectors() const { return *vectors_; }
  const Database& db() const { return *db_; }

 private:
  friend class Database;
  ReadView(const Database* db, const mem::MemEngine* engine, const vec::VectorStore* vectors,
           std::shared_lock<std::shared_mutex> lock)
      : db_(db), engine_(engine), vectors_(vectors), lock_(std::move(lock)) {}

  const Database* db_;
  const mem::MemEngine* engine_;
  const vec::VectorStore* vectors_;
  std::shared_lock<std::shared_mutex> lock_;
};

/// Write access inside Database::Write. Every call validates against the
/// current state, appends a WAL record, then applies it; the batch is forced
/// to disk once, before Write returns. A throwing call leaves the state as it
/// was before that call.
class Writer {
 public:
  const mem::MemEngine& engine() const;
  const vec::VectorStore& vectors() const;
  const Database& db() const { return *db_; }

  LabelId AddLabel(mem::LabelKind kind, const std::string& name);
  /// Existing label with this name, or a new one.
  LabelId EnsureLabel(mem::LabelKind kind, const std::string& name);
  FieldId AddField(mem::LabelKind kind, LabelId label, const std::string& name, ValueType type,
                   uint32_t dimension = 0);

  void CreateVertex(const VertexId& v);
  /// Creates a vertex with the next free local id of `label`.
  VertexId CreateVertex(LabelId label);
  bool DeleteVertex(const VertexId& v);
  /// Returns the new edge's id.
  uint64_t InsertEdge(const VertexId& src, const VertexId& dst, LabelId label);
  bool RemoveEdge(const VertexId& src, const VertexId& dst, LabelId label, uint64_t edge_id);
  void SetAttribute(const mem::AttrOwner& owner, FieldId field, const PropertyValue& value);

  void CreateCollection(const std::string& name, const vec::CollectionConfig& config,
                        std::optional<m::Binding> binding = std::nullopt);
  void DeleteCollection(const std::string& name);
  size_t UpsertPoints(const std::string& collection, std::vector<vec::Point> points);
  size_t DeletePoints(const std::string& collection, std::vector<VertexId> keys);

  size_t records() const { return records_; }

 private:
  friend class Database;
  explicit Writer(Database* db) : db_(db) {}
  void Commit(Mutation mutation);

  Database* db_;
  size_t records_ = 0;
};

/// The engine: in-memory graph and vector collections, made durable through
/// the write-ahead log and periodic checkpoints under one data directory.
///
/// Concurrency: one writer at a time. Readers share the state lock with each
/// other and are excluded only while a write is being applied. Checkpoint
/// holds the lock in shared mode while it captures the image, so it stops
/// writers but not readers.
class Database {
 public:
  /// Opens (creating if needed) and recovers the directory.
  static std::unique_ptr<Database> Open(const fs::path& dir, DatabaseOptions options = {});
  ~Database();

  const fs::path& dir() const { return dir_; }
  const DatabaseOptions& options() const { return options_; }
  const RecoveryReport& recovery() const { return recovery_; }

  ReadView Read() const;

  /// Runs `fn` with exclusive write access; one durable sync at the end.
  /// Records committed before an exception in `fn` stay committed.
  template <typename Fn>
  auto Write(Fn&& fn) {
    std::lock_guard writer(writer_mu_);
    Writer w(this);
    try {
      if constexpr (std::is_void_v<std::invoke_result_t<Fn&, Writer&>>) {
        fn(w);
        FinishWrite(w);
      } else {
        auto result = fn(w);
        FinishWrite(w);
        return result;
      }
    } catch (...) {
      FinishWriteQuietly(w);
      throw;
    }
  }

  /// Writes a checkpoint at the current last lsn and rolls the log. Returns
  /// the checkpoint lsn.
  Lsn Checkpoint();
  /// Deletes log segments wholly at or below `upto`. Throws
  /// PruneBeyondCheckpoint when `upto` exceeds the latest checkpoint.
  size_t Prune(Lsn upto);

  Lsn last_lsn() const;
  std::optional<Lsn> checkpoint_lsn() const;

  /// Vector bindings: (label, field) -> collection.
  std::optional<std::string> BoundCollection(LabelId label, FieldId field) const;
  std::vector<std::pair<m::Binding, std::string>> Bindings() const;

  /// Canonical dump of the logical state (schema, vertices, edges,
  /// attributes, collections with live points). Two databases with equal
  /// digests hold the same data.
  std::string StateDigest() const;

 private:
  friend class Writer;
  Database(fs::path dir, DatabaseOptions options);

  void FinishWrite(const Writer& w);
  void FinishWriteQuietly(const Writer& w) noexcept;
  void Recover();
  void ResetState();
  void LoadImage(const wal::CheckpointImage& image);
  wal::CheckpointImage CaptureImage(Lsn lsn) const;

  /// Throws if `mutation` cannot be applied; may canonicalize it (e.g.
  /// coerce attribute values). Returns false for a no-op.
  bool Validate(Mutation& mutation) const;
  void Apply(const Mutation& mutation);
  void ApplyBindingUpsert(const VertexId& v, const std::string& collection, FieldId vector_field);
  vec::Payload PayloadOf(const VertexId& v) const;

  fs::path dir_;
  DatabaseOptions options_;
  RecoveryReport recovery_;

  std::mutex writer_mu_;                 // single writer
  mutable std::shared_mutex state_mu_;   // readers vs. apply
  std::unique_ptr<mem::MemEngine> engine_;
  std::unique_ptr<vec::VectorStore> vectors_;
  std::map<std::string, m::Binding> bindings_;  // collection -> binding
  uint64_t next_edge_id_ = 1;

  std::unique_ptr<wal::WalLog> wal_;
  std::unique_ptr<wal::CheckpointStore> checkpoints_;
  std::mutex checkpoint_mu_;
  std::optional<Lsn> checkpoint_lsn_;
};

}  // namespace arcforge::db
