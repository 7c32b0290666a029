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
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "arcforge/common/types.h"
#include "arcforge/common/value.h"
#include "arcforge/vec/segment.h"

namespace arcforge::vec {

using Payload = std::map<std::string, PropertyValue>;

struct Point {
  VertexId key;
  FloatVector vector;
  Payload payload;
};

struct ScoredHit {
  VertexId key;
  double score;

  friend bool operator==(const ScoredHit&, const ScoredHit&) = default;
};

/// Score descending, then key ascending.
inline bool HitBefore(const ScoredHit& a, const ScoredHit& b) {
  return a.score > b.score || (a.score == b.score && a.key < b.key);
}

enum class CompareOp : uint8_t { kEq, kLt, kLe, kGt, kGe };

std::string_view CompareOpSymbol(CompareOp op);

/// `field op value` over a scalar payload value. Values of different kinds
/// (number vs text vs bool) never satisfy a predicate; Int and Float compare
/// numerically.
struct PayloadPredicate {
  std::string field;
  CompareOp op = CompareOp::kEq;
  PropertyValue value;

  bool Matches(const Payload& payload) const;
  std::string ToString() const;
};

/// Conjunction of predicates; empty matches everything.
struct PayloadFilter {
  std::vector<PayloadPredicate> terms;

  bool empty() const { return terms.empty(); }
  bool Matches(const Payload& payload) const;
  std::string ToString() const;
};

struct CollectionConfig {
  uint32_t dimension = 0;
  Metric metric = Metric::kCosine;
  HnswParams hnsw;
  size_t seal_threshold = 50000;
  double compact_ratio = 0.3;
  /// Filters whose candidate set is at most this size are answered by an
  /// exhaustive scan over the candidates.
  size_t brute_force_limit = 1000;
};

struct CollectionStats {
  size_t live_points = 0;
  size_t physical_points = 0;
  size_t tombstones = 0;
  size_t segments = 0;
  size_t sealed_segments = 0;
};

class VectorCollection {
 public:
  VectorCollection(std::string name, CollectionConfig config);

  const std::string& name() const { return name_; }
  const CollectionConfig& config() const { return config_; }
  uint32_t dimension() const { return config_.dimension; }
  Metric metric() const { return config_.metric; }

  /// Throws DimensionMismatch or TypeMismatch before touching any state.
  size_t BulkUpsert(const std::vector<Point>& points);
  /// Returns how many of the keys were live.
  size_t DeletePoints(const std::vector<VertexId>& keys);
  /// Sets one payload field of a live point; a null value removes it.
  /// Returns false when the key has no live point.
  bool UpdatePayload(const VertexId& key, const std::string& field, const PropertyValue& value);

  std::vector<ScoredHit> Search(std::span<const float> query, size_t k,
                                size_t ef_search = kDefaultEfSearch,
                                const PayloadFilter& filter = {}) const;

  /// Merges every segment whose tombstone ratio reaches the configured bound
  /// into one fresh sealed segment. Returns the number of segments merged.
  size_t Compact();

  size_t point_count() const;
  CollectionStats Stats() const;
  bool Contains(const VertexId& key) const;
  std::optional<Point> Get(const VertexId& key) const;
  /// Live points in key order.
  std::vector<Point> Snapshot() const;

  /// Checkpoint image: the segments as files and the payload table.
  struct Image {
    std::string manifest;
    std::vector<std::pair<uint32_t, std::string>> segment_files;
  };
  Image Encode() const;
  static std::unique_ptr<VectorCollection> Decode(
      std::string name, std::string_view manifest,
      const std::vector<std::pair<uint32_t, std::string>>& segment_files);

  void EncodePayloads(ByteWriter& out) const;
  void DecodePayloads(ByteReader& in);

 private:
  struct Location {
    uint32_t segment;  // index into segments_
    uint32_t ordinal;
  };
  struct ValueLess {
    bool operator()(const PropertyValue& a, const PropertyValue& b) const {
      return CompareValues(a, b) < 0;
    }
  };
  using FieldIndex = std::map<PropertyValue, std::set<VertexId>, ValueLess>;

  Segment& MutableSegment();
  void IndexPayload(const VertexId& key, const Payload& payload);
  void UnindexPayload(const VertexId& key, const Payload& payload);
  void CheckPayload(const Payload& payload) const;
  std::vector<VertexId> Candidates(const PayloadFilter& filter) const;
  void RebuildLocations();

  std::string name_;
  CollectionConfig config_;
  mutable std::shared_mutex mu_;
  std::vector<std::unique_ptr<Segment>> segments_;  // last one is the mutable segment
  uint32_t next_segment_id_ = 0;
  std::unordered_map<VertexId, Location> locations_;
  std::map<VertexId, Payload> payloads_;
  std::map<std::string, FieldIndex> payload_index_;
  uint64_t version_ = 0;
};

}  // namespace arcforge::vec
