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

#include "arcforge/mem/attribute_store.h"

#include "arcforge/common/error.h"

namespace arcforge::mem {

size_t AttrKeyHash::operator()(const AttrKey& k) const noexcept {
  size_t h = std::visit(
      [](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        return std::hash<T>{}(o);
      },
      k.owner);
  return HashCombine(HashCombine(h, k.owner.index()), k.field);
}

const PropertyValue* AttributeStore::Get(const AttrKey& key) const {
  auto it = data_.find(key);
  return it == data_.end() ? nullptr : &it->second;
}

void AttributeStore::Put(const AttrKey& key, PropertyValue value) {
  if (value.is_null()) {
    data_.erase(key);
    return;
  }
  data_.insert_or_assign(key, std::move(value));
}

bool AttributeStore::Erase(const AttrKey& key) { return data_.erase(key) > 0; }

std::vector<AttrKey> AttributeStore::EraseOwner(const AttrOwner& owner) {
  std::vector<AttrKey> erased;
  auto it = data_.lower_bound(AttrKey{owner, 0});
  while (it != data_.end() && it->first.owner == owner) {
    erased.push_back(it->first);
    it = data_.erase(it);
  }
  return erased;
}

namespace {

void PutOwner(ByteWriter& out, const AttrOwner& owner) {
  out.Put<uint8_t>(static_cast<uint8_t>(owner.index()));
  if (const auto* v = std::get_if<VertexId>(&owner)) {
    out.PutVertex(*v);
  } else {
    const auto& e = std::get<EdgeRef>(owner);
    out.PutVertex(e.src);
    out.PutEdgeKey(e.key);
  }
}

AttrOwner GetOwner(ByteReader& in) {
  auto tag = in.Get<uint8_t>();
  if (tag == 0) return in.GetVertex();
  EdgeRef e;
  e.src = in.GetVertex();
  e.key = in.GetEdgeKey();
  return e;
}

}  // namespace

void AttributeStore::Serialize(ByteWriter& out) const {
  out.Put<uint64_t>(data_.size());
  for (const auto& [key, value] : data_) {
    PutOwner(out, key.owner);
    out.Put<uint32_t>(key.field);
    out.PutValue(value);
  }
}

AttributeStore AttributeStore::Deserialize(ByteReader& in) {
  AttributeStore store;
  auto n = in.Get<uint64_t>();
  for (uint64_t i = 0; i < n; ++i) {
    AttrKey key;
    key.owner = GetOwner(in);
    key.field = in.Get<uint32_t>();
    store.data_.emplace_hint(store.data_.end(), key, in.GetValue());
  }
  return store;
}

AttributeCache::AttributeCache(size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) Throw(ErrorCode::kInvalidArgument, "cache capacity must be positive");
}

std::optional<PropertyValue> AttributeCache::Lookup(const AttrKey& key) {
  std::lock_guard lock(mu_);
  auto it = index_.find(key);
  if (it == index_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  lru_.splice(lru_.begin(), lru_, it->second);
  return it->second->second;
}

void AttributeCache::Insert(const AttrKey& key, PropertyValue value) {
  std::lock_guard lock(mu_);
  if (auto it = index_.find(key); it != index_.end()) {
    value_bytes_ += static_cast<int64_t>(value.ApproxBytes()) -
                    static_cast<int64_t>(it->second->second.ApproxBytes());
    it->second->second = std::move(value);
    lru_.splice(lru_.begin(), lru_, it->second);
    return;
  }
  if (index_.size() >= capacity_) {
    auto& victim = lru_.back();
    value_bytes_ -= static_cast<int64_t>(victim.second.ApproxBytes());
    index_.erase(victim.first);
    lru_.pop_back();
  }
  value_bytes_ += static_cast<int64_t>(value.ApproxBytes());
  lru_.emplace_front(key, std::move(value));
  index_.emplace(key, lru_.begin());
}

void AttributeCache::Invalidate(const AttrKey& key) {
  std::lock_guard lock(mu_);
  auto it = index_.find(key);
  if (it == index_.end()) return;
  value_bytes_ -= static_cast<int64_t>(it->second->second.ApproxBytes());
  lru_.erase(it->second);
  index_.erase(it);
}

void AttributeCache::Clear() {
  std::lock_guard lock(mu_);
  lru_.clear();
  index_.clear();
  value_bytes_ = 0;
}

bool AttributeCache::Contains(const AttrKey& key) const {
  std::lock_guard lock(mu_);
  return index_.contains(key);
}

size_t AttributeCache::size() const {
  std::lock_guard lock(mu_);
  return index_.size();
}

uint64_t AttributeCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

uint64_t AttributeCache::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

int64_t AttributeCache::ApproxBytes() const {
  std::lock_guard lock(mu_);
  // List node (two links + entry) and one hash bucket entry per cached key.
  constexpr int64_t kPerEntry = 2 * sizeof(void*) + sizeof(AttrKey) + 3 * sizeof(void*) +
                                sizeof(AttrKey);
  return static_cast<int64_t>(index_.size()) * kPerEntry + value_bytes_;
}

}  // namespace arcforge::mem
