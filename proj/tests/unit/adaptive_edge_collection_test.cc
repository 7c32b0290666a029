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

#include "arcforge/mem/adaptive_edge_collection.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace arcforge::mem {
namespace {

using Rep = AdaptiveEdgeCollection::Representation;

EdgeKey Key(uint64_t i) {
  // Spread keys over two labels and a few neighbors so ordering is non-trivial.
  return EdgeKey(static_cast<LabelId>(i % 2), VertexId{1, (i * 7919) % 97}, i);
}

std::vector<EdgeKey> Collect(const AdaptiveEdgeCollection& c) {
  return {c.begin(), c.end()};
}

TEST(AdaptiveEdgeCollectionTest, FirstInsertIsSmall) {
  AdaptiveEdgeCollection c;
  EXPECT_TRUE(c.Insert(Key(1)));
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(c.representation(), Rep::kSmall);
}

TEST(AdaptiveEdgeCollectionTest, UpgradesOnTheInsertAfterThreshold) {
  AdaptiveEdgeCollection c(128);
  for (uint64_t i = 0; i < 128; ++i) ASSERT_TRUE(c.Insert(Key(i)));
  EXPECT_EQ(c.size(), 128u);
  EXPECT_EQ(c.representation(), Rep::kSmall);
  ASSERT_TRUE(c.Insert(Key(128)));
  EXPECT_EQ(c.size(), 129u);
  EXPECT_EQ(c.representation(), Rep::kLarge);
}

TEST(AdaptiveEdgeCollectionTest, DuplicateInsertIsRejected) {
  AdaptiveEdgeCollection c;
  EXPECT_TRUE(c.Insert(Key(5)));
  EXPECT_FALSE(c.Insert(Key(5)));
  EXPECT_EQ(c.size(), 1u);
}

TEST(AdaptiveEdgeCollectionTest, RemoveMissingReturnsFalse) {
  AdaptiveEdgeCollection c;
  EXPECT_FALSE(c.Remove(Key(3)));
  c.Insert(Key(3));
  EXPECT_TRUE(c.Remove(Key(3)));
  EXPECT_TRUE(c.empty());
}

TEST(AdaptiveEdgeCollectionTest, NeverDowngradesAfterShrinking) {
  AdaptiveEdgeCollection c(128);
  std::set<EdgeKey> oracle;
  for (uint64_t i = 0; i < 200; ++i) {
    c.Insert(Key(i));
    oracle.insert(Key(i));
  }
  for (uint64_t i = 0; i < 150; ++i) {
    ASSERT_TRUE(c.Remove(Key(i)));
    oracle.erase(Key(i));
  }
  EXPECT_EQ(c.size(), 50u);
  EXPECT_EQ(c.representation(), Rep::kLarge);
  EXPECT_EQ(Collect(c), std::vector<EdgeKey>(oracle.begin(), oracle.end()));
}

TEST(AdaptiveEdgeCollectionTest, ZeroThresholdIsAlwaysLarge) {
  AdaptiveEdgeCollection c(0);
  EXPECT_EQ(c.representation(), Rep::kSmall);  // empty
  c.Insert(Key(1));
  EXPECT_EQ(c.representation(), Rep::kLarge);
}

TEST(AdaptiveEdgeCollectionTest, UnboundedThresholdStaysSmall) {
  AdaptiveEdgeCollection c(kUnboundedThreshold);
  for (uint64_t i = 0; i < 1000; ++i) c.Insert(Key(i));
  EXPECT_EQ(c.representation(), Rep::kSmall);
}

TEST(AdaptiveEdgeCollectionTest, IterationOrderSurvivesUpgrade) {
  std::mt19937_64 rng(11);
  std::vector<uint64_t> ids(129);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  AdaptiveEdgeCollection c(128);
  for (size_t i = 0; i < 128; ++i) c.Insert(Key(ids[i]));
  auto before = Collect(c);
  c.Insert(Key(ids[128]));
  ASSERT_EQ(c.representation(), Rep::kLarge);
  auto after = Collect(c);
  after.erase(std::find(after.begin(), after.end(), Key(ids[128])));
  EXPECT_EQ(before, after);
}

TEST(AdaptiveEdgeCollectionTest, ForEachStopsEarly) {
  AdaptiveEdgeCollection c;
  for (uint64_t i = 0; i < 10; ++i) c.Insert(Key(i));
  int seen = 0;
  bool finished = c.ForEach([&](const EdgeKey&) { return ++seen < 3; });
  EXPECT_FALSE(finished);
  EXPECT_EQ(seen, 3);
}

// Random insert/remove/contains sequences against std::set, at thresholds that
// exercise both representations and the transition.
class AdaptiveEdgeCollectionProperty : public ::testing::TestWithParam<size_t> {};

TEST_P(AdaptiveEdgeCollectionProperty, MatchesOrderedSetOracle) {
  const size_t threshold = GetParam();
  std::mt19937_64 rng(1234 + threshold);
  for (int seq = 0; seq < 300; ++seq) {
    AdaptiveEdgeCollection c(threshold);
    std::set<EdgeKey> oracle;
    std::uniform_int_distribution<int> len_dist(0, 1000);
    std::uniform_int_distribution<uint64_t> key_dist(0, 511);
    int len = len_dist(rng);
    for (int step = 0; step < len; ++step) {
      auto key = Key(key_dist(rng));
      switch (rng() % 3) {
        case 0: ASSERT_EQ(c.Insert(key), oracle.insert(key).second); break;
        case 1: ASSERT_EQ(c.Remove(key), oracle.erase(key) == 1); break;
        default: ASSERT_EQ(c.Contains(key), oracle.contains(key)); break;
      }
      ASSERT_EQ(c.size(), oracle.size());
      if (c.representation() == Rep::kSmall) {
        ASSERT_LE(c.size(), threshold);
      }
    }
    ASSERT_EQ(Collect(c), std::vector<EdgeKey>(oracle.begin(), oracle.end()));
  }
}

INSTANTIATE_TEST_SUITE_P(Thresholds, AdaptiveEdgeCollectionProperty,
                         ::testing::Values(0, 1, 64, 128, 256, kUnboundedThreshold));

TEST(AdaptiveEdgeCollectionTest, CountsAllocationsPerRepresentation) {
  AllocationCounter small_bytes, large_bytes;
  {
    AdaptiveEdgeCollection small(kUnboundedThreshold, &small_bytes);
    AdaptiveEdgeCollection large(0, &large_bytes);
    for (uint64_t i = 0; i < 500; ++i) {
      small.Insert(Key(i));
      large.Insert(Key(i));
    }
    EXPECT_GT(small_bytes.load(), 0);
    EXPECT_LT(small_bytes.load(), large_bytes.load());
  }
  EXPECT_EQ(small_bytes.load(), 0);
  EXPECT_EQ(large_bytes.load(), 0);
}

}  // namespace
}  // namespace arcforge::mem
