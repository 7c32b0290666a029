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

#include "arcforge/wal/checkpoint.h"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include "arcforge/common/binary_io.h"
#include "arcforge/common/error.h"

namespace arcforge::wal {

namespace {

constexpr std::string_view kCatalog = "catalog";
constexpr std::string_view kTopology = "topology_image";
constexpr std::string_view kAttributes = "attribute_image";
constexpr std::string_view kVectorManifest = "vector_manifest";
constexpr std::string_view kCollectionManifest = "MANIFEST";

std::string WithCrc(std::string_view body) {
  std::string out(body);
  ByteWriter crc;
  crc.Put<uint32_t>(Crc32c(body));
  out += crc.data();
  return out;
}

std::string WithoutCrc(std::string bytes, const fs::path& path) {
  if (bytes.size() < 4) Throw(ErrorCode::kCorruptCheckpoint, fmt::format("{} is truncated", path.string()));
  std::string_view body(bytes.data(), bytes.size() - 4);
  ByteReader trailer(std::string_view(bytes).substr(bytes.size() - 4), ErrorCode::kCorruptCheckpoint);
  if (trailer.Get<uint32_t>() != Crc32c(body)) {
    Throw(ErrorCode::kCorruptCheckpoint, fmt::format("{} fails its checksum", path.string()));
  }
  bytes.resize(bytes.size() - 4);
  return bytes;
}

std::string ReadCheckpointFile(const fs::path& path) {
  if (!fs::exists(path)) Throw(ErrorCode::kCorruptCheckpoint, fmt::format("{} is missing", path.string()));
  try {
    return ReadFile(path);
  } catch (const Error& e) {
    Throw(ErrorCode::kCorruptCheckpoint, e.what());
  }
}

std::optional<Lsn> ParseLsn(std::string_view s) {
  Lsn v = 0;
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.remove_suffix(1);
  auto [p, err] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (err != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

CheckpointStore::CheckpointStore(fs::path root, size_t keep)
    : root_(std::move(root)), dir_(root_ / "checkpoint"), keep_(std::max<size_t>(keep, 1)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) Throw(ErrorCode::kIoError, fmt::format("create {}: {}", dir_.string(), ec.message()));
  // Half-built checkpoints from an earlier crash.
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.path().filename().string().starts_with("tmp-")) fs::remove_all(entry.path(), ec);
  }
}

fs::path CheckpointStore::Dir(Lsn lsn) const { return dir_ / fmt::format("{:020}", lsn); }

std::optional<Lsn> CheckpointStore::Current() const {
  fs::path path = root_ / "CURRENT";
  if (!fs::exists(path)) return std::nullopt;
  try {
    return ParseLsn(ReadFile(path));
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<Lsn> CheckpointStore::List() const {
  std::vector<Lsn> out;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_directory()) continue;
    if (auto lsn = ParseLsn(entry.path().filename().string())) out.push_back(*lsn);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

void CheckpointStore::Write(const CheckpointImage& image) {
  fs::path tmp = dir_ / fmt::format("tmp-{:020}", image.lsn);
  std::error_code ec;
  fs::remove_all(tmp, ec);
  fs::create_directories(tmp / "vectors");

  WriteFileSynced(tmp / kCatalog, WithCrc(image.catalog));
  WriteFileSynced(tmp / kTopology, WithCrc(image.topology));
  WriteFileSynced(tmp / kAttributes, WithCrc(image.attributes));
  ByteWriter manifest;
  manifest.Put<uint32_t>(static_cast<uint32_t>(image.vectors.size()));
  for (const auto& c : image.vectors) {
    manifest.PutString(c.name);
    fs::path cdir = tmp / "vectors" / c.name;
    fs::create_directories(cdir);
    WriteFileSynced(cdir / kCollectionManifest, c.manifest);
    manifest.Put<uint32_t>(static_cast<uint32_t>(c.segments.size()));
    for (const auto& [id, bytes] : c.segments) {
      manifest.Put<uint32_t>(id);
      WriteFileSynced(cdir / fmt::format("{}.avs", id), bytes);
    }
    FsyncDirectory(cdir);
  }
  WriteFileSynced(tmp / kVectorManifest, WithCrc(manifest.data()));
  FsyncDirectory(tmp / "vectors");
  FsyncDirectory(tmp);

  fs::path final_dir = Dir(image.lsn);
  fs::remove_all(final_dir, ec);
  fs::rename(tmp, final_dir, ec);
  if (ec) Throw(ErrorCode::kIoError, fmt::format("rename {}: {}", tmp.string(), ec.message()));
  FsyncDirectory(dir_);
  WriteFileAtomic(root_ / "CURRENT", fmt::format("{}\n", image.lsn));
  RemoveStale();
}

void CheckpointStore::RemoveStale() const {
  auto all = List();
  auto current = Current();
  for (size_t i = keep_; i < all.size(); ++i) {
    if (current && all[i] == *current) continue;
    std::error_code ec;
    fs::remove_all(Dir(all[i]), ec);
  }
}

CheckpointImage CheckpointStore::Load(Lsn lsn) const {
  fs::path dir = Dir(lsn);
  if (!fs::is_directory(dir)) {
    Throw(ErrorCode::kCorruptCheckpoint, fmt::format("checkpoint {} is missing", lsn));
  }
  CheckpointImage image;
  image.lsn = lsn;
  image.catalog = WithoutCrc(ReadCheckpointFile(dir / kCatalog), dir / kCatalog);
  image.topology = WithoutCrc(ReadCheckpointFile(dir / kTopology), dir / kTopology);
  image.attributes = WithoutCrc(ReadCheckpointFile(dir / kAttributes), dir / kAttributes);
  std::string manifest = WithoutCrc(ReadCheckpointFile(dir / kVectorManifest), dir / kVectorManifest);
  ByteReader in(manifest, ErrorCode::kCorruptCheckpoint);
  auto count = in.Get<uint32_t>();
  for (uint32_t i = 0; i < count; ++i) {
    CheckpointImage::Collection c;
    c.name = in.GetString();
    fs::path cdir = dir / "vectors" / c.name;
    c.manifest = ReadCheckpointFile(cdir / kCollectionManifest);
    auto segments = in.Get<uint32_t>();
    for (uint32_t s = 0; s < segments; ++s) {
      auto id = in.Get<uint32_t>();
      fs::path path = cdir / fmt::format("{}.avs", id);
      if (!fs::exists(path)) Throw(ErrorCode::kCorruptCheckpoint, fmt::format("{} is missing", path.string()));
      MappedFile mapped(path);
      c.segments.emplace_back(id, std::string(mapped.view()));
    }
    image.vectors.push_back(std::move(c));
  }
  if (!in.AtEnd()) Throw(ErrorCode::kCorruptCheckpoint, "trailing bytes in vector manifest");
  return image;
}

}  // namespace arcforge::wal
