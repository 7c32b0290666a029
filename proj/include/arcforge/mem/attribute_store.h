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
#include <list>
#include <map>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <variant>

#include "arcforge/common/binary_io.h"
#include "arcforge/common/types.h"
#include "arcforge/common/value.h"

namespace arcforge::mem {

/// A vertex or an edge that owns attributes.
using AttrOwner = std::variant<VertexId, EdgeRef>;

struct AttrKey {
  AttrOwner owner;
  FieldId field = 0;

  friend bool operator==(const AttrKey&, const AttrKey&) = default;
  friend auto operator<=>(const AttrKey& a, const AttrKey& b) {
    if (auto c = a.owner <=> b.owner; c != 0) return c;
    return a.field <=> b.field;
  }
};

struct AttrKeyHash {
  size_t operator()(const AttrKey& k) const noexcept;
};

/// Ordered key-value image of every attribute. This is the backing store the
/// cache loads from and the source of the checkpoint's attribute image.
class AttributeStore {
 public:
  const PropertyValue* Get(const AttrKey& key) const;
  void Put(const AttrKey& key, PropertyValue value);
  bool Erase(const AttrKey& key);
  /// Drops every field of the owner and returns the erased keys.
  std::vector<AttrKey> EraseOwner(const AttrOwner& owner);

  /// (field, value) pairs of one owner in field order.
  template <typename Fn>
  void ForEachField(const AttrOwner& owner, Fn&& fn) const {
    for (auto it = data_.lower_bound(AttrKey{owner, 0});
         it != data_.end() && it->first.owner == owner; ++it) {
      fn(it->first.field, it->second);
    }
  }

  size_t size() const { return data_.size(); }

  void Serialize(ByteWriter& out) const;
  static AttributeStore Deserialize(ByteReader& in);

  friend bool operator==(const AttributeStore&, const AttributeStore&) = default;

 private:
  std::map<AttrKey, PropertyValue> data_;
};

/// Entry-count bounded LRU cache in front of the AttributeStore. Internally
/// synchronized: readers holding only a shared engine lock may populate it.
class AttributeCache {
 public:
  static constexpr size_t kDefaultCapacity = 100'000;

  explicit AttributeCache(size_t capacity = kDefaultCapacity);

  /// Cached value, refreshing its recency. nullopt on miss.
  std::optional<PropertyValue> Lookup(const AttrKey& key);
  /// Inserts or replaces, evicting the least recently used entry when full.
  void Insert(const AttrKey& key, PropertyValue value);
  void Invalidate(const AttrKey& key);
  void Clear();

  bool Contains(const AttrKey& key) const;
  size_t size() const;
  size_t capacity() const { return capacity_; }
  uint64_t hits() const;
  uint64_t misses() const;
  int64_t ApproxBytes() const;

 private:
  using Entry = std::pair<AttrKey, PropertyValue>;

  mutable std::mutex mu_;
  size_t capacity_;
  std::list<Entry> lru_;  // front = most recent
  std::unordered_map<AttrKey, std::list<Entry>::iterator, AttrKeyHash> index_;
  uint64_t hits_ = 0;
  uint64_t misses_ = 0;
  int64_t value_bytes_ = 0;
};

}  // namespace arcforge::mem
