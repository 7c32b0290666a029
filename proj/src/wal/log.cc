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

#include "arcforge/wal/log.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>

#include <fmt/format.h>

#include "arcforge/common/binary_io.h"
#include "arcforge/common/error.h"

namespace arcforge::wal {

namespace {

constexpr size_t kNameDigits = 20;

// Parses one frame at `pos`. Returns the frame size, or 0 if the bytes there
// are not a complete, checksummed record.
size_t ParseFrame(std::string_view data, size_t pos, WalRecord* out) {
  if (data.size() - pos < 4) return 0;
  uint32_t len;
  std::memcpy(&len, data.data() + pos, 4);
  if (len < 9 || data.size() - pos - 4 < uint64_t{len} + 4) return 0;
  std::string_view body = data.substr(pos + 4, len);
  uint32_t crc;
  std::memcpy(&crc, data.data() + pos + 4 + len, 4);
  if (crc != Crc32c(body)) return 0;
  std::memcpy(&out->lsn, body.data(), 8);
  out->op = static_cast<WalOp>(static_cast<uint8_t>(body[8]));
  out->payload.assign(body.substr(9));
  return 4 + len + 4;
}

[[noreturn]] void ThrowErrno(std::string_view what, const fs::path& path) {
  Throw(ErrorCode::kIoError, fmt::format("{} {}: {}", what, path.string(), std::strerror(errno)));
}

}  // namespace

std::string_view WalOpName(WalOp op) {
  switch (op) {
    case WalOp::kCreateVertex: return "CreateVertex";
    case WalOp::kDeleteVertex: return "DeleteVertex";
    case WalOp::kInsertEdge: return "InsertEdge";
    case WalOp::kRemoveEdge: return "RemoveEdge";
    case WalOp::kSetAttribute: return "SetAttribute";
    case WalOp::kCreateCollection: return "CreateCollection";
    case WalOp::kDeleteCollection: return "DeleteCollection";
    case WalOp::kUpsertPoints: return "UpsertPoints";
    case WalOp::kDeletePoints: return "DeletePoints";
    case WalOp::kSchemaChange: return "SchemaChange";
  }
  return "?";
}

std::string EncodeRecord(const WalRecord& record) {
  ByteWriter body;
  body.Put<uint64_t>(record.lsn);
  body.Put<uint8_t>(static_cast<uint8_t>(record.op));
  body.PutBytes(record.payload);
  ByteWriter frame;
  frame.Put<uint32_t>(static_cast<uint32_t>(body.data().size()));
  frame.PutBytes(body.data());
  frame.Put<uint32_t>(Crc32c(body.data()));
  return frame.Take();
}

WalLog::WalLog(fs::path dir, WalOptions options) : dir_(std::move(dir)), options_(options) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) Throw(ErrorCode::kIoError, fmt::format("create {}: {}", dir_.string(), ec.message()));
  Scan();
  OpenActive(segments_.empty());
  if (options_.sync == SyncMode::kGroup) group_thread_ = std::thread([this] { GroupSyncLoop(); });
}

WalLog::~WalLog() {
  if (group_thread_.joinable()) {
    {
      std::lock_guard lock(sync_mu_);
      stop_ = true;
    }
    sync_cv_.notify_all();
    group_thread_.join();
  }
  try {
    Sync();
  } catch (const Error&) {
  }
  CloseActive();
}

fs::path WalLog::SegmentPath(Lsn start) const {
  return dir_ / fmt::format("{:0{}}.log", start, kNameDigits);
}

std::vector<Lsn> WalLog::segment_starts() const {
  std::vector<Lsn> out;
  for (const auto& s : segments_) out.push_back(s.start);
  return out;
}

void WalLog::Scan() {
  for (const auto& entry : fs::directory_iterator(dir_)) {
    auto name = entry.path().filename().string();
    if (name.size() != kNameDigits + 4 || !name.ends_with(".log")) continue;
    Lsn start = 0;
    auto [p, err] = std::from_chars(name.data(), name.data() + kNameDigits, start);
    if (err != std::errc() || p != name.data() + kNameDigits) continue;
    segments_.push_back({start, entry.path()});
  }
  std::sort(segments_.begin(), segments_.end(),
            [](const SegmentFile& a, const SegmentFile& b) { return a.start < b.start; });
  if (segments_.empty()) return;

  Lsn expected = segments_.front().start;
  if (expected == 0) expected = 1;
  size_t keep = segments_.size();
  for (size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].start != expected) {
      keep = i;
      break;
    }
    std::string data = ReadFile(segments_[i].path);
    size_t pos = 0;
    WalRecord record;
    while (pos < data.size()) {
      size_t n = ParseFrame(data, pos, &record);
      if (n == 0 || record.lsn != expected) break;
      pos += n;
      ++expected;
    }
    if (pos < data.size()) {
      // Damage inside this segment: cut here and drop everything after.
      std::error_code ec;
      fs::resize_file(segments_[i].path, pos, ec);
      if (ec) Throw(ErrorCode::kIoError, fmt::format("truncate {}: {}", segments_[i].path.string(), ec.message()));
      truncated_on_open_ = true;
      keep = i + 1;
      break;
    }
  }
  for (size_t i = keep; i < segments_.size(); ++i) {
    fs::remove(segments_[i].path);
    truncated_on_open_ = true;
  }
  segments_.resize(keep);
  next_lsn_ = expected;
  if (segments_.empty()) next_lsn_ = 1;
}

void WalLog::OpenActive(bool create) {
  if (create) segments_.push_back({next_lsn_, SegmentPath(next_lsn_)});
  const fs::path& path = segments_.back().path;
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd_ < 0) ThrowErrno("open", path);
  active_bytes_ = fs::file_size(path);
  if (create) FsyncDirectory(dir_);
}

void WalLog::CloseActive() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void WalLog::Replay(Lsn after, const std::function<void(const WalRecord&)>& fn) const {
  for (size_t i = 0; i < segments_.size(); ++i) {
    if (i + 1 < segments_.size() && segments_[i + 1].start <= after + 1) continue;
    std::string data = ReadFile(segments_[i].path);
    size_t pos = 0;
    WalRecord record;
    while (pos < data.size()) {
      size_t n = ParseFrame(data, pos, &record);
      if (n == 0) {
        Throw(ErrorCode::kCorruptLog,
              fmt::format("{} changed after it was validated", segments_[i].path.string()));
      }
      pos += n;
      if (record.lsn > after) fn(record);
    }
  }
}

Lsn WalLog::Append(WalOp op, std::string_view payload, bool sync) {
  WalRecord record{next_lsn_, op, std::string(payload)};
  std::string frame = EncodeRecord(record);
  if (active_bytes_ > 0 && active_bytes_ + frame.size() > options_.segment_bytes) Roll();

  const char* p = frame.data();
  size_t left = frame.size();
  while (left > 0) {
    ssize_t n = ::write(fd_, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      int saved = errno;
      if (::ftruncate(fd_, static_cast<off_t>(active_bytes_)) != 0) {
        // Nothing more to do; the torn frame fails its crc on the next open.
      }
      errno = saved;
      ThrowErrno("append to", segments_.back().path);
    }
    p += n;
    left -= static_cast<size_t>(n);
  }
  active_bytes_ += frame.size();
  ++next_lsn_;
  if (options_.sync == SyncMode::kGroup) {
    {
      std::lock_guard lock(sync_mu_);
      dirty_ = true;
    }
    sync_cv_.notify_one();
  } else if (sync && options_.sync == SyncMode::kPerAppend) {
    Sync();
  }
  return record.lsn;
}

void WalLog::Sync() {
  std::lock_guard lock(sync_mu_);
  SyncLocked();
}

void WalLog::SyncLocked() {
  if (fd_ >= 0 && ::fdatasync(fd_) != 0) ThrowErrno("fdatasync", segments_.back().path);
  dirty_ = false;
}

void WalLog::GroupSyncLoop() {
  std::unique_lock lock(sync_mu_);
  while (!stop_) {
    sync_cv_.wait(lock, [this] { return stop_ || dirty_; });
    if (stop_) break;
    sync_cv_.wait_for(lock, options_.group_window, [this] { return stop_; });
    try {
      SyncLocked();
    } catch (const Error&) {
      // Retried on the next window; a failing disk surfaces on Roll or close.
    }
  }
}

void WalLog::Roll() {
  if (segments_.back().start == next_lsn_ && active_bytes_ == 0) return;
  std::lock_guard lock(sync_mu_);
  SyncLocked();
  CloseActive();
  OpenActive(true);
}

void WalLog::ResetTo(Lsn next) {
  std::lock_guard lock(sync_mu_);
  CloseActive();
  for (const auto& seg : segments_) fs::remove(seg.path);
  segments_.clear();
  next_lsn_ = next;
  OpenActive(true);
}

size_t WalLog::Prune(Lsn upto) {
  size_t removed = 0;
  while (segments_.size() > 1 && segments_[1].start - 1 <= upto) {
    std::error_code ec;
    fs::remove(segments_.front().path, ec);
    if (ec) Throw(ErrorCode::kIoError, fmt::format("remove {}: {}", segments_.front().path.string(), ec.message()));
    segments_.erase(segments_.begin());
    ++removed;
  }
  if (removed > 0) FsyncDirectory(dir_);
  return removed;
}

}  // namespace arcforge::wal
