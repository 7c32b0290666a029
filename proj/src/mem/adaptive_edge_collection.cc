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

#include "arcforge/mem/adaptive_edge_collection.h"

#include <algorithm>

namespace arcforge::mem {

AdaptiveEdgeCollection::AdaptiveEdgeCollection(size_t threshold,
                                               AllocationCounter* counter)
    : data_(std::in_place_type<SmallVec>, CountingAllocator<EdgeKey>(counter)),
      threshold_(threshold) {}

bool AdaptiveEdgeCollection::Insert(const EdgeKey& key) {
  if (auto* vec = std::get_if<SmallVec>(&data_)) {
    auto it = std::lower_bound(vec->begin(), vec->end(), key);
    if (it != vec->end() && *it == key) return false;
    vec->insert(it, key);
    ++count_;
    if (count_ > threshold_) Upgrade();
    return true;
  }
  auto& set = std::get<LargeSet>(data_);
  if (!set.insert(key).second) return false;
  ++count_;
  return true;
}

bool AdaptiveEdgeCollection::Remove(const EdgeKey& key) {
  if (auto* vec = std::get_if<SmallVec>(&data_)) {
    auto it = std::lower_bound(vec->begin(), vec->end(), key);
    if (it == vec->end() || *it != key) return false;
    vec->erase(it);
    --count_;
    return true;
  }
  if (std::get<LargeSet>(data_).erase(key) == 0) return false;
  --count_;
  return true;
}

bool AdaptiveEdgeCollection::Contains(const EdgeKey& key) const {
  if (const auto* vec = std::get_if<SmallVec>(&data_)) {
    return std::binary_search(vec->begin(), vec->end(), key);
  }
  return std::get<LargeSet>(data_).contains(key);
}

void AdaptiveEdgeCollection::Upgrade() {
  auto& vec = std::get<SmallVec>(data_);
  LargeSet set(vec.get_allocator());
  // The array is sorted, so every insert lands at the end.
  for (const auto& key : vec) set.emplace_hint(set.end(), key);
  data_ = std::move(set);
}

AdaptiveEdgeCollection::const_iterator AdaptiveEdgeCollection::begin() const {
  return std::visit(
      [](const auto& c) { return const_iterator(const_iterator::Impl(c.begin())); },
      data_);
}

AdaptiveEdgeCollection::const_iterator AdaptiveEdgeCollection::end() const {
  return std::visit(
      [](const auto& c) { return const_iterator(const_iterator::Impl(c.end())); },
      data_);
}

}  // namespace arcforge::mem
