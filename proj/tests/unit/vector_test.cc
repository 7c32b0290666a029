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

#include <fmt/format.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "arcforge/common/error.h"
#include "arcforge/vec/collection.h"
#include "arcforge/vec/vector_store.h"

namespace arcforge::vec {
namespace {

// Straightforward double-precision reference, written independently of the
// library kernels.
double RefScore(Metric metric, const FloatVector& a, const FloatVector& b) {
  double dot = 0, na = 0, nb = 0, l2 = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += double(a[i]) * double(b[i]);
    na += double(a[i]) * double(a[i]);
    nb += double(b[i]) * double(b[i]);
    l2 += (double(a[i]) - double(b[i])) * (double(a[i]) - double(b[i]));
  }
  switch (metric) {
    case Metric::kCosine: return (na == 0 || nb == 0) ? 0.0 : dot / std::sqrt(na * nb);
    case Metric::kEuclidean: return -std::sqrt(l2);
    case Metric::kDot: return dot;
  }
  return 0;
}

FloatVector RandomVector(std::mt19937_64& rng, uint32_t dim) {
  std::normal_distribution<float> g(0.0f, 1.0f);
  FloatVector v(dim);
  for (auto& x : v) x = g(rng);
  return v;
}

std::vector<VertexId> BruteForce(const std::vector<Point>& points, Metric metric,
                                 const FloatVector& q, size_t k,
                                 const PayloadFilter& filter = {}) {
  std::vector<std::pair<double, VertexId>> scored;
  for (const auto& p : points) {
    if (!filter.Matches(p.payload)) continue;
    scored.emplace_back(RefScore(metric, q, p.vector), p.key);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  std::vector<VertexId> out;
  for (size_t i = 0; i < scored.size() && i < k; ++i) out.push_back(scored[i].second);
  return out;
}

std::vector<VertexId> Keys(const std::vector<ScoredHit>& hits) {
  std::vector<VertexId> out;
  for (const auto& h : hits) out.push_back(h.key);
  return out;
}

TEST(Distance, Examples) {
  FloatVector v{0.6f, 0.8f};
  EXPECT_NEAR(Distance(Metric::kCosine, v, v), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(Distance(Metric::kEuclidean, FloatVector{0, 0}, FloatVector{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(Distance(Metric::kDot, FloatVector{1, 2, 3}, FloatVector{4, 5, 6}), 32.0);
  EXPECT_EQ(Distance(Metric::kCosine, FloatVector{0, 0}, FloatVector{1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(Score(Metric::kEuclidean, FloatVector{0, 0}, FloatVector{3, 4}), -5.0);
}

TEST(Distance, DimensionMismatch) {
  try {
    Distance(Metric::kDot, FloatVector{1, 2}, FloatVector{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Distance, MatchesReferenceOnRandomPairs) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<uint32_t> dim(1, 300);
  for (int i = 0; i < 2000; ++i) {
    uint32_t d = dim(rng);
    auto a = RandomVector(rng, d);
    auto b = RandomVector(rng, d);
    for (Metric m : {Metric::kCosine, Metric::kEuclidean, Metric::kDot}) {
      double ref = RefScore(m, a, b);
      double got = Score(m, a, b);
      EXPECT_LE(std::abs(got - ref), 1e-5 * std::max(1.0, std::abs(ref))) << MetricName(m);
      QueryScorer q(m, a);
      EXPECT_LE(std::abs(q(b) - ref), 1e-5 * std::max(1.0, std::abs(ref)));
    }
  }
}

CollectionConfig Config(uint32_t dim, Metric metric) {
  CollectionConfig c;
  c.dimension = dim;
  c.metric = metric;
  return c;
}

std::vector<Point> RandomPoints(std::mt19937_64& rng, size_t n, uint32_t dim) {
  std::vector<Point> points;
  for (size_t i = 0; i < n; ++i) {
    Point p{{1, i}, RandomVector(rng, dim), {}};
    p.payload["bucket"] = int64_t(i % 200);
    p.payload["name"] = fmt::format("p{:05}", i);
    points.push_back(std::move(p));
  }
  return points;
}

TEST(Collection, EmptySearch) {
  VectorCollection c("c", Config(4, Metric::kCosine));
  EXPECT_TRUE(c.Search(FloatVector{1, 0, 0, 0}, 3).empty());
}

TEST(Collection, OrthogonalVectors) {
  VectorCollection c("c", Config(3, Metric::kCosine));
  c.BulkUpsert({{{0, 1}, {1, 0, 0}, {}}, {{0, 2}, {0, 1, 0}, {}}, {{0, 3}, {0, 0, 1}, {}}});
  auto hits = c.Search(FloatVector{0, 1, 0}, 3);
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_EQ(hits[0].key, (VertexId{0, 2}));
  EXPECT_DOUBLE_EQ(hits[0].score, 1.0);
  EXPECT_EQ(hits[1].key, (VertexId{0, 1}));  // tie at 0.0 broken by key
  EXPECT_EQ(hits[1].score, 0.0);
  EXPECT_EQ(hits[2].key, (VertexId{0, 3}));
}

TEST(Collection, UpsertReplacesAndDimensionIsAtomic) {
  VectorCollection c("c", Config(2, Metric::kCosine));
  c.BulkUpsert({{{0, 1}, {1, 0}, {}}});
  auto self = c.Search(FloatVector{1, 0}, 1);
  ASSERT_EQ(self.size(), 1u);
  EXPECT_NEAR(self[0].score, 1.0, 1e-12);
  c.BulkUpsert({{{0, 1}, {0, 1}, {}}});
  auto hits = c.Search(FloatVector{0, 1}, 5);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_NEAR(hits[0].score, 1.0, 1e-12);
  EXPECT_EQ(c.point_count(), 1u);

  try {
    c.BulkUpsert({{{0, 2}, {1, 1}, {}}, {{0, 3}, {1, 1, 1}, {}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  EXPECT_EQ(c.point_count(), 1u);
  EXPECT_FALSE(c.Contains({0, 2}));
}

TEST(Collection, ExactAtFullEf) {
  std::mt19937_64 rng(11);
  for (Metric metric : {Metric::kCosine, Metric::kEuclidean, Metric::kDot}) {
    auto points = RandomPoints(rng, 1500, 16);
    VectorCollection c("c", Config(16, metric));
    c.BulkUpsert(points);
    for (int q = 0; q < 30; ++q) {
      auto query = RandomVector(rng, 16);
      auto hits = c.Search(query, 10, points.size());
      auto expect = BruteForce(points, metric, query, 10);
      auto got = Keys(hits);
      EXPECT_EQ(std::set(got.begin(), got.end()), std::set(expect.begin(), expect.end()))
          << MetricName(metric);
      EXPECT_TRUE(std::is_sorted(hits.begin(), hits.end(), HitBefore));
    }
  }
}

TEST(Collection, RecallAtDefaults) {
  std::mt19937_64 rng(12);
  auto points = RandomPoints(rng, 3000, 32);
  VectorCollection c("c", Config(32, Metric::kEuclidean));
  c.BulkUpsert(points);
  double recall = 0;
  for (int q = 0; q < 50; ++q) {
    auto query = RandomVector(rng, 32);
    auto got = Keys(c.Search(query, 10));
    auto expect = BruteForce(points, Metric::kEuclidean, query, 10);
    std::set<VertexId> truth(expect.begin(), expect.end());
    recall += std::count_if(got.begin(), got.end(), [&](auto& k) { return truth.contains(k); }) / 10.0;
  }
  EXPECT_GE(recall / 50, 0.95);
}

TEST(Collection, FilteredSearchSelectsExactlyTheMatches) {
  std::mt19937_64 rng(13);
  auto points = RandomPoints(rng, 1000, 8);
  VectorCollection c("c", Config(8, Metric::kCosine));
  c.BulkUpsert(points);
  // bucket = 7 selects exactly 5 of 1,000 points.
  PayloadFilter f{{{"bucket", CompareOp::kEq, int64_t(7)}}};
  auto query = RandomVector(rng, 8);
  auto hits = c.Search(query, 5, kDefaultEfSearch, f);
  EXPECT_EQ(Keys(hits), BruteForce(points, Metric::kCosine, query, 5, f));
  for (const auto& h : hits) EXPECT_EQ(h.key.local % 200, 7u);
}

TEST(Collection, FilteredSearchLargeCandidateSet) {
  std::mt19937_64 rng(14);
  auto points = RandomPoints(rng, 4000, 8);
  CollectionConfig config = Config(8, Metric::kEuclidean);
  VectorCollection c("c", config);
  c.BulkUpsert(points);
  PayloadFilter f{{{"bucket", CompareOp::kLt, 100.0}, {"name", CompareOp::kGe, "p01000"}}};
  for (int q = 0; q < 20; ++q) {
    auto query = RandomVector(rng, 8);
    auto hits = c.Search(query, 10, points.size(), f);
    EXPECT_EQ(Keys(hits), BruteForce(points, Metric::kEuclidean, query, 10, f));
  }
}

TEST(Collection, PredicatesDoNotCrossKinds) {
  Payload p{{"a", int64_t(3)}, {"s", "x"}};
  EXPECT_TRUE((PayloadPredicate{"a", CompareOp::kLe, 3.0}).Matches(p));
  EXPECT_FALSE((PayloadPredicate{"a", CompareOp::kLt, "z"}).Matches(p));
  EXPECT_FALSE((PayloadPredicate{"s", CompareOp::kGt, int64_t(0)}).Matches(p));
  EXPECT_FALSE((PayloadPredicate{"missing", CompareOp::kEq, int64_t(0)}).Matches(p));
}

TEST(Collection, CompactionDropsTombstones) {
  std::mt19937_64 rng(15);
  auto points = RandomPoints(rng, 1000, 8);
  VectorCollection c("c", Config(8, Metric::kCosine));
  c.BulkUpsert(points);
  EXPECT_EQ(c.Compact(), 0u);
  std::vector<Point> overwrite(points.begin(), points.begin() + 500);
  for (auto& p : overwrite) p.vector = RandomVector(rng, 8);
  c.BulkUpsert(overwrite);
  EXPECT_EQ(c.Stats().physical_points, 1500u);

  std::vector<FloatVector> queries;
  std::vector<std::vector<ScoredHit>> before;
  for (int q = 0; q < 20; ++q) {
    queries.push_back(RandomVector(rng, 8));
    before.push_back(c.Search(queries.back(), 10, 2000));
  }
  EXPECT_EQ(c.Compact(), 1u);
  auto stats = c.Stats();
  EXPECT_EQ(stats.live_points, 1000u);
  EXPECT_EQ(stats.physical_points, 1000u);
  EXPECT_EQ(stats.tombstones, 0u);
  for (size_t q = 0; q < queries.size(); ++q) {
    auto after = c.Search(queries[q], 10, 2000);
    auto a = Keys(before[q]);
    auto b = Keys(after);
    EXPECT_EQ(std::set(a.begin(), a.end()), std::set(b.begin(), b.end()));
  }
  // Writes keep going to a fresh mutable segment.
  c.BulkUpsert({{{2, 1}, RandomVector(rng, 8), {}}});
  EXPECT_EQ(c.point_count(), 1001u);
}

TEST(Collection, MultiSegmentEqualsSingleSegment) {
  std::mt19937_64 rng(16);
  auto points = RandomPoints(rng, 900, 8);
  CollectionConfig small = Config(8, Metric::kDot);
  small.seal_threshold = 128;
  VectorCollection multi("m", small);
  VectorCollection single("s", Config(8, Metric::kDot));
  multi.BulkUpsert(points);
  single.BulkUpsert(points);
  multi.DeletePoints({{1, 3}, {1, 400}, {1, 899}});
  single.DeletePoints({{1, 3}, {1, 400}, {1, 899}});
  EXPECT_GT(multi.Stats().segments, 5u);
  for (int q = 0; q < 20; ++q) {
    auto query = RandomVector(rng, 8);
    EXPECT_EQ(Keys(multi.Search(query, 10, 1000)), Keys(single.Search(query, 10, 1000)));
  }
}

TEST(Collection, EncodeDecodeRoundTrip) {
  std::mt19937_64 rng(17);
  auto points = RandomPoints(rng, 700, 8);
  CollectionConfig config = Config(8, Metric::kEuclidean);
  config.seal_threshold = 300;
  VectorCollection c("c", config);
  c.BulkUpsert(points);
  c.DeletePoints({{1, 10}, {1, 20}});
  c.UpdatePayload({1, 30}, "bucket", int64_t(999));

  auto image = c.Encode();
  ByteWriter payloads;
  c.EncodePayloads(payloads);
  auto restored = VectorCollection::Decode("c", image.manifest, image.segment_files);
  ByteReader in(payloads.data());
  restored->DecodePayloads(in);

  EXPECT_EQ(restored->point_count(), c.point_count());
  EXPECT_EQ(restored->Get({1, 30})->payload.at("bucket"), PropertyValue(int64_t(999)));
  PayloadFilter f{{{"bucket", CompareOp::kGe, int64_t(150)}}};
  for (int q = 0; q < 20; ++q) {
    auto query = RandomVector(rng, 8);
    EXPECT_EQ(c.Search(query, 10), restored->Search(query, 10));
    EXPECT_EQ(c.Search(query, 10, 64, f), restored->Search(query, 10, 64, f));
  }
}

TEST(Collection, CorruptSegmentIsDetected) {
  VectorCollection c("c", Config(2, Metric::kCosine));
  c.BulkUpsert({{{0, 1}, {1, 0}, {}}});
  auto image = c.Encode();
  image.segment_files[0].second[20] ^= 0x40;
  try {
    VectorCollection::Decode("c", image.manifest, image.segment_files);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptCheckpoint);
  }
}

TEST(VectorStore, CreateDelete) {
  VectorStore store;
  store.CreateCollection("person_emb", Config(64, Metric::kCosine));
  EXPECT_EQ(store.Names(), std::vector<std::string>{"person_emb"});
  EXPECT_EQ(store.Get("person_emb")->point_count(), 0u);
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kRuntimeError;
  };
  EXPECT_EQ(code([&] { store.CreateCollection("person_emb", Config(64, Metric::kCosine)); }),
            ErrorCode::kDuplicateCollection);
  EXPECT_EQ(code([&] { store.CreateCollection("x", Config(0, Metric::kCosine)); }),
            ErrorCode::kBadDimension);
  store.DeleteCollection("person_emb");
  EXPECT_EQ(code([&] { store.Get("person_emb"); }), ErrorCode::kUnknownCollection);
  EXPECT_EQ(code([&] { store.DeleteCollection("person_emb"); }), ErrorCode::kUnknownCollection);
}

}  // namespace
}  // namespace arcforge::vec
