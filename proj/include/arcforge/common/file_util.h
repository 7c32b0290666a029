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

#include <filesystem>
#include <string>
#include <string_view>

namespace arcforge {

namespace fs = std::filesystem;

/// Whole-file read; throws IoError.
std::string ReadFile(const fs::path& path);

/// Writes and fsyncs `bytes` at `path` (no rename).
void WriteFileSynced(const fs::path& path, std::string_view bytes);

/// Write to `path.tmp`, fsync, rename over `path`, fsync the directory.
void WriteFileAtomic(const fs::path& path, std::string_view bytes);

void FsyncDirectory(const fs::path& dir);

/// Read-only memory mapping of a whole file.
class MappedFile {
 public:
  explicit MappedFile(const fs::path& path);  // IoError
  ~MappedFile();
  MappedFile(const MappedFile&) = delete;
  MappedFile& operator=(const MappedFile&) = delete;

  std::string_view view() const { return {static_cast<const char*>(data_), size_}; }

 private:
  void* data_ = nullptr;
  size_t size_ = 0;
};

}  // namespace arcforge
