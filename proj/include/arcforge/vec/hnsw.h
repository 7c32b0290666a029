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
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "arcforge/common/binary_io.h"
#include "arcforge/vec/distance.h"

namespace arcforge::vec {

struct HnswParams {
  uint32_t m = 16;
  uint32_t ef_construction = 200;

  friend bool operator==(const HnswParams&, const HnswParams&) = default;
};

inline constexpr size_t kDefaultEfSearch = 64;

/// Row-major float32 vectors with their norms cached.
class VectorBlock {
 public:
  explicit VectorBlock(uint32_t dimension) : dimension_(dimension) {}

  uint32_t Append(std::span<const float> v);
  std::span<const float> at(uint32_t i) const {
    return {data_.data() + static_cast<size_t>(i) * dimension_, dimension_};
  }
  double norm(uint32_t i) const { return norms_[i]; }
  size_t size() const { return norms_.size(); }
  uint32_t dimension() const { return dimension_; }
  std::span<const float> raw() const { return data_; }

 private:
  uint32_t dimension_;
  std::vector<float> data_;
  std::vector<double> norms_;
};

/// Hierarchical navigable small world graph over the vectors of one
/// VectorBlock, addressed by ordinal. Construction follows the usual layered
/// insertion with the neighbor-selection heuristic; layer 0 keeps up to 4*m
/// links, upper layers up to m.
///
/// Levels are a pure function of (seed, ordinal), so inserting the same
/// vectors in the same order always produces the same graph.
class HnswIndex {
 public:
  static constexpr uint32_t kNoNode = std::numeric_limits<uint32_t>::max();
  static constexpr int kMaxLevel = 16;

  struct Hit {
    uint32_t node;
    double score;
  };
  using AcceptFn = std::function<bool(uint32_t)>;

  HnswIndex(const VectorBlock* vectors, Metric metric, HnswParams params, uint64_t seed);

  /// Links the next ordinal of the block into the graph.
  void Add(uint32_t node);
  /// Re-selects the layer-0 links of every node from a search over the
  /// current graph. Early nodes were linked when few candidates existed;
  /// this repairs their neighborhoods.
  void Refine();

  /// Up to `ef` accepted nodes, best score first. Non-accepted nodes are still
  /// traversed, so a restrictive filter costs exploration, not correctness.
  std::vector<Hit> Search(const QueryScorer& query, size_t ef, const AcceptFn& accept) const;

  size_t size() const { return levels_.size(); }
  uint32_t entry_point() const { return entry_point_; }
  int max_level() const { return max_level_; }
  int level(uint32_t node) const { return levels_[node]; }
  std::span<const uint32_t> links(uint32_t node, int layer) const { return links_[node][layer]; }
  const HnswParams& params() const { return params_; }

  void Serialize(ByteWriter& out) const;
  /// Restores levels and links; the vectors must already be in `vectors`.
  void Deserialize(ByteReader& in);

 private:
  struct Candidate {
    double score;
    uint32_t node;
  };

  int DrawLevel(uint32_t node) const;
  double NodeScore(const QueryScorer& q, uint32_t node) const;
  std::vector<Candidate> SearchLayer(const QueryScorer& q, std::vector<Candidate> entry,
                                     size_t ef, int layer, const AcceptFn* accept) const;
  std::vector<uint32_t> SelectNeighbors(std::vector<Candidate> candidates, size_t m) const;
  void Shrink(uint32_t node, int layer);
  size_t MaxLinks(int layer) const { return layer == 0 ? 4 * params_.m : params_.m; }

  const VectorBlock* vectors_;
  Metric metric_;
  HnswParams params_;
  uint64_t seed_;
  double level_mult_;
  std::vector<uint8_t> levels_;
  std::vector<std::vector<std::vector<uint32_t>>> links_;  // [node][layer]
  uint32_t entry_point_ = kNoNode;
  int max_level_ = -1;
};

}  // namespace arcforge::vec
