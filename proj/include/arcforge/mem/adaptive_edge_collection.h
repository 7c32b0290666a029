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

#include <cstddef>
#include <iterator>
#include <limits>
#include <set>
#include <type_traits>
#include <variant>
#include <vector>

#include "arcforge/common/types.h"
#include "arcforge/mem/counting_allocator.h"

namespace arcforge::mem {

/// Threshold value that keeps every collection in the compact representation.
inline constexpr size_t kUnboundedThreshold = std::numeric_limits<size_t>::max();
inline constexpr size_t kDefaultEdgeThreshold = 128;

/// Edge container for one (vertex, direction, edge label).
///
/// Low-degree collections are a sorted contiguous array with binary-search
/// membership. The first insert that pushes the count past `threshold`
/// converts the array into an ordered tree set; removals never convert back.
/// Both representations iterate in EdgeKey order, so callers cannot tell them
/// apart except through representation() and the allocation counter.
class AdaptiveEdgeCollection {
 public:
  enum class Representation { kSmall, kLarge };

  using SmallVec = std::vector<EdgeKey, CountingAllocator<EdgeKey>>;
  using LargeSet = std::set<EdgeKey, std::less<>, CountingAllocator<EdgeKey>>;

  explicit AdaptiveEdgeCollection(size_t threshold = kDefaultEdgeThreshold,
                                  AllocationCounter* counter = nullptr);

  /// Returns false (and changes nothing) if the key is already present.
  bool Insert(const EdgeKey& key);
  bool Remove(const EdgeKey& key);
  bool Contains(const EdgeKey& key) const;

  size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  size_t threshold() const { return threshold_; }
  Representation representation() const {
    return std::holds_alternative<SmallVec>(data_) ? Representation::kSmall
                                                   : Representation::kLarge;
  }

  /// Calls fn(const EdgeKey&) in ascending order. If fn returns bool, a false
  /// return stops the walk and ForEach returns false.
  template <typename Fn>
  bool ForEach(Fn&& fn) const {
    return std::visit(
        [&](const auto& container) {
          for (const auto& key : container) {
            if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const EdgeKey&>, bool>) {
              if (!fn(key)) return false;
            } else {
              fn(key);
            }
          }
          return true;
        },
        data_);
  }

  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = EdgeKey;
    using difference_type = std::ptrdiff_t;
    using pointer = const EdgeKey*;
    using reference = const EdgeKey&;

    const_iterator() = default;
    reference operator*() const {
      return std::visit([](const auto& it) -> reference { return *it; }, it_);
    }
    pointer operator->() const { return &**this; }
    const_iterator& operator++() {
      std::visit([](auto& it) { ++it; }, it_);
      return *this;
    }
    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const const_iterator&, const const_iterator&) = default;

   private:
    friend class AdaptiveEdgeCollection;
    using Impl = std::variant<SmallVec::const_iterator, LargeSet::const_iterator>;
    explicit const_iterator(Impl it) : it_(it) {}
    Impl it_;
  };

  const_iterator begin() const;
  const_iterator end() const;

 private:
  void Upgrade();

  std::variant<SmallVec, LargeSet> data_;
  size_t count_ = 0;
  size_t threshold_;
};

}  // namespace arcforge::mem
