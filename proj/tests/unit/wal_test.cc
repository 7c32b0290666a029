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

#include <gtest/gtest.h>

#include <fstream>

#include "arcforge/common/error.h"
#include "arcforge/wal/log.h"
#include "support/history.h"

namespace arcforge::wal {
namespace {

using arcforge::testing::ScratchDir;

std::vector<WalRecord> ReadAll(const WalLog& log, Lsn after = 0) {
  std::vector<WalRecord> out;
  log.Replay(after, [&](const WalRecord& r) { out.push_back(r); });
  return out;
}

TEST(WalLog, AppendAndReplay) {
  ScratchDir dir("wal");
  {
    WalLog log(dir.path(), {});
    EXPECT_EQ(log.Append(WalOp::kCreateVertex, "a"), 1u);
    EXPECT_EQ(log.Append(WalOp::kInsertEdge, "bb"), 2u);
  }
  WalLog log(dir.path(), {});
  auto records = ReadAll(log);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].lsn, 1u);
  EXPECT_EQ(records[1].op, WalOp::kInsertEdge);
  EXPECT_EQ(records[1].payload, "bb");
  EXPECT_EQ(log.Append(WalOp::kCreateVertex, "c"), 3u);
}

TEST(WalLog, SegmentsRollAndPrune) {
  ScratchDir dir("wal-roll");
  WalOptions options;
  options.segment_bytes = 200;
  options.sync = SyncMode::kNone;
  WalLog log(dir.path(), options);
  for (int i = 0; i < 50; ++i) log.Append(WalOp::kSetAttribute, std::string(40, 'x'));
  auto starts = log.segment_starts();
  EXPECT_GT(starts.size(), 5u);
  EXPECT_EQ(starts.front(), 1u);
  EXPECT_EQ(ReadAll(log, 20).front().lsn, 21u);
  log.Prune(25);
  EXPECT_LE(log.first_lsn(), 26u);
  EXPECT_GT(log.first_lsn(), 1u);
  EXPECT_EQ(ReadAll(log, 25).size(), 25u);
}

TEST(WalLog, DamageInAnEarlySegmentDropsEverythingAfter) {
  ScratchDir dir("wal-damage");
  WalOptions options;
  options.segment_bytes = 200;
  {
    WalLog log(dir.path(), options);
    for (int i = 0; i < 30; ++i) log.Append(WalOp::kCreateVertex, std::string(30, 'y'));
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir.path())) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  ASSERT_GT(files.size(), 3u);
  {
    std::fstream f(files[1], std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(60);
    f.put('\x01');
  }
  WalLog log(dir.path(), options);
  EXPECT_TRUE(log.truncated_on_open());
  auto records = ReadAll(log);
  for (size_t i = 0; i < records.size(); ++i) EXPECT_EQ(records[i].lsn, i + 1);
  EXPECT_LT(records.size(), 30u);
  EXPECT_EQ(log.segment_starts().size(), 2u);
  EXPECT_EQ(log.Append(WalOp::kCreateVertex, "z"), records.size() + 1);
}

TEST(WalLog, GroupModeFlushesInTheBackground) {
  ScratchDir dir("wal-group");
  WalOptions options;
  options.sync = SyncMode::kGroup;
  {
    WalLog log(dir.path(), options);
    for (int i = 0; i < 100; ++i) log.Append(WalOp::kCreateVertex, "g");
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  WalLog log(dir.path(), {});
  EXPECT_EQ(log.last_lsn(), 100u);
}

TEST(WalLog, RecordFrameIsLengthLsnOpPayloadCrc) {
  std::string frame = EncodeRecord({7, WalOp::kDeletePoints, "abc"});
  ASSERT_EQ(frame.size(), kRecordOverhead + 3);
  uint32_t len;
  std::memcpy(&len, frame.data(), 4);
  EXPECT_EQ(len, 8u + 1u + 3u);
  uint32_t crc;
  std::memcpy(&crc, frame.data() + frame.size() - 4, 4);
  EXPECT_EQ(crc, Crc32c(std::string_view(frame).substr(4, len)));
  // CRC32C check value.
  EXPECT_EQ(Crc32c("123456789"), 0xE3069283u);
}

}  // namespace
}  // namespace arcforge::wal
