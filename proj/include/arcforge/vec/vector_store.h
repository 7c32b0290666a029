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
#include <shared_mutex>
#include <string>
#include <vector>

#include "arcforge/vec/collection.h"

namespace arcforge::vec {

/// Named collections. Collections are shared so a running search keeps its
/// collection alive across a concurrent delete.
class VectorStore {
 public:
  /// Throws DuplicateCollection, or BadDimension for dimension 0.
  std::shared_ptr<VectorCollection> CreateCollection(const std::string& name,
                                                     const CollectionConfig& config);
  /// Throws UnknownCollection.
  void DeleteCollection(const std::string& name);

  /// Throws UnknownCollection.
  std::shared_ptr<VectorCollection> Get(const std::string& name) const;
  std::shared_ptr<VectorCollection> Find(const std::string& name) const;
  bool Has(const std::string& name) const { return Find(name) != nullptr; }
  std::vector<std::string> Names() const;

  /// Replaces a collection wholesale; used when restoring a checkpoint.
  void Install(std::shared_ptr<VectorCollection> collection);
  void Clear();

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<VectorCollection>> collections_;
};

}  // namespace arcforge::vec
