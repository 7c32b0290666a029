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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "arcforge/common/file_util.h"
#include "arcforge/common/types.h"

namespace arcforge::wal {

enum class WalOp : uint8_t {
  kCreateVertex = 1,
  kDeleteVertex = 2,
  kInsertEdge = 3,
  kRemoveEdge = 4,
  kSetAttribute = 5,
  kCreateCollection = 6,
  kDeleteCollection = 7,
  kUpsertPoints = 8,
  kDeletePoints = 9,
  kSchemaChange = 10,
};

std::string_view WalOpName(WalOp op);

struct WalRecord {
  Lsn lsn = 0;
  WalOp op = WalOp::kCreateVertex;
  std::string payload;
};

/// Frame: u32 length of (lsn, op, payload) | u64 lsn | u8 op | payload |
/// u32 crc32c of (lsn, op, payload).
std::string EncodeRecord(const WalRecord& record);
inline constexpr size_t kRecordOverhead = 4 + 8 + 1 + 4;

enum class SyncMode : uint8_t {
  kPerAppend,  // fdatasync before every append returns
  kGroup,      // background fdatasync at most every group_window
  kNone,       // leave it to the OS; bulk loads and benchmarks only
};

struct WalOptions {
  SyncMode sync = SyncMode::kPerAppend;
  uint64_t segment_bytes = 64ull << 20;
  std::chrono::milliseconds group_window{5};
};

/// Segmented append-only log under `dir`, one file per segment named by the
/// zero-padded lsn of its first record.
///
/// Opening validates every segment in order and cuts the log at the first
/// damaged, short, or out-of-sequence record: the file is truncated there and
/// all later segments are deleted.
class WalLog {
 public:
  WalLog(fs::path dir, WalOptions options);
  ~WalLog();
  WalLog(const WalLog&) = delete;
  WalLog& operator=(const WalLog&) = delete;

  /// Start lsn of the oldest segment still on disk: every record from here
  /// on can be replayed.
  Lsn first_lsn() const { return segments_.empty() ? next_lsn_ : segments_.front().start; }
  Lsn last_lsn() const { return next_lsn_ - 1; }
  Lsn next_lsn() const { return next_lsn_; }
  /// True when the cut at open time dropped anything.
  bool truncated_on_open() const { return truncated_on_open_; }

  /// Calls fn for every record with lsn > after, in order.
  void Replay(Lsn after, const std::function<void(const WalRecord&)>& fn) const;

  /// Writes one record and returns its lsn. With sync=false the record is
  /// written but not yet forced; call Sync() before acknowledging it.
  /// On IoError the log is rolled back to its previous length.
  Lsn Append(WalOp op, std::string_view payload, bool sync = true);
  void Sync();

  /// Makes the log continue in a fresh segment starting at next_lsn().
  void Roll();
  /// Deletes whole segments whose records all have lsn <= upto. The active
  /// segment is never deleted.
  size_t Prune(Lsn upto);
  /// Drops every segment and continues the log at `next`. Used when a
  /// checkpoint is ahead of the surviving log, so lsns are never reused.
  void ResetTo(Lsn next);
  std::vector<Lsn> segment_starts() const;

 private:
  struct SegmentFile {
    Lsn start;
    fs::path path;
  };

  void Scan();
  void OpenActive(bool create);
  void CloseActive();
  void SyncLocked();
  void GroupSyncLoop();
  fs::path SegmentPath(Lsn start) const;

  fs::path dir_;
  WalOptions options_;
  std::vector<SegmentFile> segments_;
  Lsn next_lsn_ = 1;
  bool truncated_on_open_ = false;

  int fd_ = -1;
  uint64_t active_bytes_ = 0;

  std::mutex sync_mu_;
  std::condition_variable sync_cv_;
  bool dirty_ = false;
  bool stop_ = false;
  std::thread group_thread_;
};

}  // namespace arcforge::wal
