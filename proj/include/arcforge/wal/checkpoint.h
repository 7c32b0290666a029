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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcforge/common/file_util.h"
#include "arcforge/common/types.h"

namespace arcforge::wal {

/// A full state image as opaque byte blobs. The store adds and checks the
/// crc trailers; the blobs themselves belong to the engine.
struct CheckpointImage {
  struct Collection {
    std::string name;
    std::string manifest;
    std::vector<std::pair<uint32_t, std::string>> segments;  // (segment id, file bytes)
  };

  Lsn lsn = 0;
  std::string catalog;
  std::string topology;
  std::string attributes;
  std::vector<Collection> vectors;
};

/// Layout under the data directory:
///   checkpoint/<lsn>/catalog, topology_image, attribute_image, vector_manifest
///   checkpoint/<lsn>/vectors/<collection>/MANIFEST and <segment id>.avs
///   CURRENT  (text: lsn of the latest complete checkpoint)
/// A checkpoint is assembled under checkpoint/tmp-<lsn>/ and renamed into
/// place before CURRENT moves, so a crash at any point leaves the previous
/// checkpoint as the recovery base.
class CheckpointStore {
 public:
  explicit CheckpointStore(fs::path root, size_t keep = 2);

  void Write(const CheckpointImage& image);
  /// Throws CorruptCheckpoint on any missing file or checksum mismatch.
  CheckpointImage Load(Lsn lsn) const;

  /// Lsn named by CURRENT, if it exists and parses.
  std::optional<Lsn> Current() const;
  /// Complete checkpoint directories, newest first.
  std::vector<Lsn> List() const;

  fs::path Dir(Lsn lsn) const;

 private:
  void RemoveStale() const;

  fs::path root_;
  fs::path dir_;
  size_t keep_;
};

}  // namespace arcforge::wal
