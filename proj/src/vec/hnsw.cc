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

#include "arcforge/vec/hnsw.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <queue>

#include "arcforge/common/error.h"

namespace arcforge::vec {

namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Epoch-stamped visited marks, reused across searches on the same thread.
class VisitedMarks {
 public:
  void Reset(size_t n) {
    if (marks_.size() < n) marks_.resize(n, 0);
    if (++epoch_ == 0) {
      std::fill(marks_.begin(), marks_.end(), 0);
      epoch_ = 1;
    }
  }
  bool TestAndSet(uint32_t i) {
    if (marks_[i] == epoch_) return true;
    marks_[i] = epoch_;
    return false;
  }

 private:
  std::vector<uint32_t> marks_;
  uint32_t epoch_ = 0;
};

thread_local VisitedMarks tls_visited;

}  // namespace

uint32_t VectorBlock::Append(std::span<const float> v) {
  if (v.size() != dimension_) {
    Throw(ErrorCode::kDimensionMismatch,
          fmt::format("expected a {}-d vector, got {}", dimension_, v.size()));
  }
  data_.insert(data_.end(), v.begin(), v.end());
  norms_.push_back(Norm(v));
  return static_cast<uint32_t>(norms_.size() - 1);
}

HnswIndex::HnswIndex(const VectorBlock* vectors, Metric metric, HnswParams params, uint64_t seed)
    : vectors_(vectors),
      metric_(metric),
      params_(params),
      seed_(seed),
      level_mult_(1.0 / std::log(std::max<double>(params.m, 2))) {
  if (params_.m < 2) Throw(ErrorCode::kInvalidArgument, "hnsw m must be at least 2");
  if (params_.ef_construction == 0) {
    Throw(ErrorCode::kInvalidArgument, "hnsw ef_construction must be positive");
  }
}

int HnswIndex::DrawLevel(uint32_t node) const {
  // Uniform in (0, 1] from the top 53 bits.
  double u = (static_cast<double>(SplitMix64(seed_ ^ (uint64_t{node} * 0x2545F4914F6CDD1DULL)) >> 11) + 1.0) *
             (1.0 / 9007199254740992.0);
  int level = static_cast<int>(std::floor(-std::log(u) * level_mult_));
  return std::min(level, kMaxLevel);
}

double HnswIndex::NodeScore(const QueryScorer& q, uint32_t node) const {
  return q(vectors_->at(node), vectors_->norm(node));
}

std::vector<HnswIndex::Candidate> HnswIndex::SearchLayer(const QueryScorer& q,
                                                         std::vector<Candidate> entry, size_t ef,
                                                         int layer,
                                                         const AcceptFn* accept) const {
  // Best candidate on top of `frontier`; worst accepted result on top of `best`.
  auto frontier_cmp = [](const Candidate& a, const Candidate& b) {
    return a.score < b.score || (a.score == b.score && a.node > b.node);
  };
  auto best_cmp = [](const Candidate& a, const Candidate& b) {
    return a.score > b.score || (a.score == b.score && a.node < b.node);
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(frontier_cmp)> frontier(frontier_cmp);
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(best_cmp)> best(best_cmp);

  auto& visited = tls_visited;
  visited.Reset(size());
  for (const auto& c : entry) {
    if (visited.TestAndSet(c.node)) continue;
    frontier.push(c);
    if (accept == nullptr || (*accept)(c.node)) best.push(c);
  }
  while (best.size() > ef) best.pop();

  while (!frontier.empty()) {
    Candidate current = frontier.top();
    if (best.size() >= ef && current.score < best.top().score) break;
    frontier.pop();
    for (uint32_t next : links_[current.node][layer]) {
      if (visited.TestAndSet(next)) continue;
      double s = NodeScore(q, next);
      if (best.size() < ef || s > best.top().score) {
        frontier.push({s, next});
        if (accept == nullptr || (*accept)(next)) {
          best.push({s, next});
          if (best.size() > ef) best.pop();
        }
      }
    }
  }

  std::vector<Candidate> out;
  out.reserve(best.size());
  while (!best.empty()) {
    out.push_back(best.top());
    best.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<uint32_t> HnswIndex::SelectNeighbors(std::vector<Candidate> candidates,
                                                 size_t m) const {
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.score > b.score || (a.score == b.score && a.node < b.node);
  });
  std::vector<uint32_t> selected;
  if (candidates.size() <= m) {
    for (const auto& c : candidates) selected.push_back(c.node);
    return selected;
  }
  std::vector<Candidate> pruned;
  for (const auto& c : candidates) {
    if (selected.size() >= m) break;
    // Keep c only if it is closer to the base than to every neighbor kept so
    // far; otherwise it is reachable through that neighbor.
    QueryScorer from_c(metric_, vectors_->at(c.node));
    bool keep = true;
    for (uint32_t s : selected) {
      if (NodeScore(from_c, s) > c.score) {
        keep = false;
        break;
      }
    }
    if (keep) {
      selected.push_back(c.node);
    } else {
      pruned.push_back(c);
    }
  }
  // Fill the remaining slots with the closest pruned candidates so sparse
  // regions do not end up with a handful of links.
  for (const auto& c : pruned) {
    if (selected.size() >= m) break;
    selected.push_back(c.node);
  }
  return selected;
}

void HnswIndex::Shrink(uint32_t node, int layer) {
  auto& list = links_[node][layer];
  QueryScorer from_node(metric_, vectors_->at(node));
  std::vector<Candidate> candidates;
  candidates.reserve(list.size());
  for (uint32_t n : list) candidates.push_back({NodeScore(from_node, n), n});
  list = SelectNeighbors(std::move(candidates), MaxLinks(layer));
}

void HnswIndex::Add(uint32_t node) {
  if (node != size() || node >= vectors_->size()) {
    Throw(ErrorCode::kInvalidArgument, fmt::format("hnsw ordinal {} out of sequence", node));
  }
  int level = DrawLevel(node);
  levels_.push_back(static_cast<uint8_t>(level));
  links_.emplace_back(level + 1);

  if (entry_point_ == kNoNode) {
    entry_point_ = node;
    max_level_ = level;
    return;
  }

  QueryScorer q(metric_, vectors_->at(node));
  uint32_t ep = entry_point_;
  double ep_score = NodeScore(q, ep);
  for (int layer = max_level_; layer > level; --layer) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (uint32_t next : links_[ep][layer]) {
        double s = NodeScore(q, next);
        if (s > ep_score) {
          ep = next;
          ep_score = s;
          changed = true;
        }
      }
    }
  }

  std::vector<Candidate> entry{{ep_score, ep}};
  for (int layer = std::min(level, max_level_); layer >= 0; --layer) {
    auto found = SearchLayer(q, entry, params_.ef_construction, layer, nullptr);
    auto neighbors = SelectNeighbors(found, params_.m);
    links_[node][layer] = neighbors;
    for (uint32_t n : neighbors) {
      links_[n][layer].push_back(node);
      if (links_[n][layer].size() > MaxLinks(layer)) Shrink(n, layer);
    }
    entry = std::move(found);
  }

  if (level > max_level_) {
    max_level_ = level;
    entry_point_ = node;
  }
}

void HnswIndex::Refine() {
  const size_t n = size();
  const size_t max_links = MaxLinks(0);
  // Pass 1: fresh forward lists from searches over the unchanged graph.
  std::vector<std::vector<uint32_t>> forward(n);
  for (uint32_t node = 0; node < n; ++node) {
    QueryScorer q(metric_, vectors_->at(node));
    std::vector<Candidate> entry;
    for (uint32_t other : links_[node][0]) entry.push_back({NodeScore(q, other), other});
    if (entry.empty()) continue;
    auto found = SearchLayer(q, std::move(entry), params_.ef_construction, 0, nullptr);
    std::erase_if(found, [&](const Candidate& c) { return c.node == node; });
    forward[node] = SelectNeighbors(std::move(found), max_links);
  }
  // Pass 2: every node picks from its forward list plus the nodes that chose it.
  std::vector<std::vector<uint32_t>> reverse(n);
  for (uint32_t node = 0; node < n; ++node) {
    for (uint32_t other : forward[node]) reverse[other].push_back(node);
  }
  for (uint32_t node = 0; node < n; ++node) {
    if (forward[node].empty() && reverse[node].empty()) continue;
    QueryScorer q(metric_, vectors_->at(node));
    std::vector<uint32_t> ids = forward[node];
    ids.insert(ids.end(), reverse[node].begin(), reverse[node].end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Candidate> candidates;
    candidates.reserve(ids.size());
    for (uint32_t other : ids) candidates.push_back({NodeScore(q, other), other});
    links_[node][0] = SelectNeighbors(std::move(candidates), max_links);
  }
}

std::vector<HnswIndex::Hit> HnswIndex::Search(const QueryScorer& query, size_t ef,
                                              const AcceptFn& accept) const {
  std::vector<Hit> hits;
  if (entry_point_ == kNoNode || ef == 0) return hits;
  uint32_t ep = entry_point_;
  double ep_score = NodeScore(query, ep);
  for (int layer = max_level_; layer > 0; --layer) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (uint32_t next : links_[ep][layer]) {
        double s = NodeScore(query, next);
        if (s > ep_score) {
          ep = next;
          ep_score = s;
          changed = true;
        }
      }
    }
  }
  auto found = SearchLayer(query, {{ep_score, ep}}, ef, 0, accept ? &accept : nullptr);
  hits.reserve(found.size());
  for (const auto& c : found) hits.push_back({c.node, c.score});
  return hits;
}

void HnswIndex::Serialize(ByteWriter& out) const {
  out.Put<uint32_t>(entry_point_);
  out.Put<int32_t>(max_level_);
  out.Put<uint64_t>(levels_.size());
  for (uint8_t l : levels_) out.Put<uint8_t>(l);
  for (const auto& node_links : links_) {
    for (const auto& layer : node_links) {
      out.Put<uint32_t>(static_cast<uint32_t>(layer.size()));
      for (uint32_t n : layer) out.Put<uint32_t>(n);
    }
  }
}

void HnswIndex::Deserialize(ByteReader& in) {
  entry_point_ = in.Get<uint32_t>();
  max_level_ = in.Get<int32_t>();
  auto n = in.Get<uint64_t>();
  if (n != vectors_->size()) {
    Throw(ErrorCode::kCorruptCheckpoint,
          fmt::format("hnsw has {} nodes but {} vectors", n, vectors_->size()));
  }
  levels_.resize(n);
  for (auto& l : levels_) l = in.Get<uint8_t>();
  links_.assign(n, {});
  for (uint64_t i = 0; i < n; ++i) {
    links_[i].resize(levels_[i] + 1);
    for (auto& layer : links_[i]) {
      auto count = in.Get<uint32_t>();
      layer.resize(count);
      for (auto& id : layer) {
        id = in.Get<uint32_t>();
        if (id >= n) Throw(ErrorCode::kCorruptCheckpoint, "hnsw link out of range");
      }
    }
  }
}

}  // namespace arcforge::vec
