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

#include "arcforge/vec/vector_store.h"

#include <fmt/format.h>

#include <mutex>

#include "arcforge/common/error.h"

namespace arcforge::vec {

std::shared_ptr<VectorCollection> VectorStore::CreateCollection(const std::string& name,
                                                                const CollectionConfig& config) {
  if (config.dimension == 0) {
    Throw(ErrorCode::kBadDimension, fmt::format("collection '{}' needs dimension >= 1", name));
  }
  std::unique_lock lock(mu_);
  if (collections_.contains(name)) {
    Throw(ErrorCode::kDuplicateCollection, fmt::format("collection '{}' already exists", name));
  }
  auto collection = std::make_shared<VectorCollection>(name, config);
  collections_.emplace(name, collection);
  return collection;
}

void VectorStore::DeleteCollection(const std::string& name) {
  std::unique_lock lock(mu_);
  if (collections_.erase(name) == 0) {
    Throw(ErrorCode::kUnknownCollection, fmt::format("no collection named '{}'", name));
  }
}

std::shared_ptr<VectorCollection> VectorStore::Get(const std::string& name) const {
  auto c = Find(name);
  if (!c) Throw(ErrorCode::kUnknownCollection, fmt::format("no collection named '{}'", name));
  return c;
}

std::shared_ptr<VectorCollection> VectorStore::Find(const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = collections_.find(name);
  return it == collections_.end() ? nullptr : it->second;
}

std::vector<std::string> VectorStore::Names() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> names;
  for (const auto& [name, c] : collections_) names.push_back(name);
  return names;
}

void VectorStore::Install(std::shared_ptr<VectorCollection> collection) {
  std::unique_lock lock(mu_);
  collections_[collection->name()] = std::move(collection);
}

void VectorStore::Clear() {
  std::unique_lock lock(mu_);
  collections_.clear();
}

}  // namespace arcforge::vec
