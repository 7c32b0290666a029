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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arcforge/common/types.h"
#include "arcforge/vec/hnsw.h"

namespace arcforge::vec {

/// A batch of points with its own HNSW graph. The mutable segment takes new
/// points; a sealed segment only ever gains tombstones.
///
/// File layout (little-endian):
///   "AVS2" | u32 dimension | u8 metric | u64 point count
///   u32 segment id | u8 sealed | u64 refined-at size | u32 m | u32 ef_construction
///   vector block: count * dimension float32, row-major
///   hnsw: u32 entry | i32 max level | u64 count | count * u8 level |
///         per node, per layer 0..level: u32 n, n * u32 neighbor ordinal
///   key map: count * (u16 label, u64 local)
///   tombstones: u64 n, n * u32 ordinal
///   u32 crc32c of everything above
class Segment {
 public:
  static constexpr std::string_view kMagic = "AVS2";
  static constexpr size_t kRefineMinSize = 256;

  Segment(uint32_t id, uint32_t dimension, Metric metric, HnswParams params);
  Segment(const Segment&) = delete;
  Segment& operator=(const Segment&) = delete;

  uint32_t id() const { return id_; }
  bool sealed() const { return sealed_; }
  /// Refines the graph one last time if it grew since the last pass.
  void Seal();

  /// Appends and indexes a point; returns its ordinal.
  uint32_t Add(const VertexId& key, std::span<const float> vector);
  /// Refines the graph if the segment has doubled since the last pass (from
  /// kRefineMinSize on). Called once per upsert batch, so a bulk load gets
  /// one pass at the end and single-point inserts pay O(1) amortized.
  void MaybeRefine();
  void Tombstone(uint32_t ordinal);
  bool is_live(uint32_t ordinal) const { return !dead_[ordinal]; }

  size_t size() const { return keys_.size(); }
  size_t live_count() const { return keys_.size() - tombstones_; }
  size_t tombstone_count() const { return tombstones_; }
  double tombstone_ratio() const {
    return keys_.empty() ? 0.0 : static_cast<double>(tombstones_) / keys_.size();
  }

  const VertexId& key(uint32_t ordinal) const { return keys_[ordinal]; }
  std::span<const float> vector(uint32_t ordinal) const { return vectors_.at(ordinal); }
  double norm(uint32_t ordinal) const { return vectors_.norm(ordinal); }
  const HnswIndex& index() const { return index_; }
  uint32_t dimension() const { return vectors_.dimension(); }
  Metric metric() const { return metric_; }

  std::vector<HnswIndex::Hit> Search(const QueryScorer& query, size_t ef,
                                     const HnswIndex::AcceptFn& accept) const {
    return index_.Search(query, ef, accept);
  }

  std::string Encode() const;
  /// Throws CorruptCheckpoint on a bad magic, crc, or truncated body.
  static std::unique_ptr<Segment> Decode(std::string_view bytes);

 private:
  uint32_t id_;
  Metric metric_;
  bool sealed_ = false;
  VectorBlock vectors_;
  HnswIndex index_;
  std::vector<VertexId> keys_;
  std::vector<bool> dead_;
  size_t tombstones_ = 0;
  size_t refined_at_ = 0;  // size at the last refinement pass
};

}  // namespace arcforge::vec
