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


#include "bench.h"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>
#include <set>

#include "arcforge/common/error.h"
#include "arcforge/query/engine.h"
#include "arcforge/vec/distance.h"

namespace arcforge::cli {

namespace {

using Clock = std::chrono::steady_clock;

double Ms(Clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); }

double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

constexpr size_t kUnbounded = std::numeric_limits<size_t>::max();

}  // namespace

const std::vector<std::string>& TraversalQueries() {
  static const std::vector<std::string> queries = {
      "MATCH (m:person)-[e:knows * 2]->(n:person) RETURN n LIMIT 1000;",
      "MATCH (m:person)-[e:knows]->(n:person) RETURN n LIMIT 1000;",
      "MATCH (m:person) RETURN m.firstName LIMIT 1000;",
      "MATCH (m:person) RETURN m.firstName LIMIT 1000;",
  };
  return queries;
}

Json BenchTraversal(const fs::path& dir, const db::DatabaseOptions& base, const TraversalOptions& options) {
  Json report = {{"suite", "traversal"}, {"runs", options.runs}, {"configs", Json::array()}};
  const std::pair<const char*, size_t> configs[] = {{"all-Large", 0}, {"adaptive", options.threshold}};
  std::vector<std::vector<double>> medians;
  for (const auto& [name, threshold] : configs) {
    auto o = base;
    o.mem.edge_threshold = threshold;
    auto db = db::Database::Open(dir, o);
    query::QueryEngine engine(*db);
    Json config = {{"name", name}, {"threshold", threshold}, {"queries", Json::array()}};
    std::vector<double> meds;
    for (const auto& q : TraversalQueries()) {
      for (size_t i = 0; i < options.warmup; ++i) engine.Run(q);
      std::vector<double> ms;
      size_t rows = 0;
      for (size_t i = 0; i < options.runs; ++i) {
        auto start = Clock::now();
        auto r = engine.Run(q);
        ms.push_back(Ms(Clock::now() - start));
        rows = r.rows.size();
      }
      meds.push_back(Median(ms));
      config["queries"].push_back({{"query", q}, {"rows", rows}, {"ms", ms}, {"median_ms", meds.back()}});
    }
    medians.push_back(std::move(meds));
    report["configs"].push_back(std::move(config));
  }
  Json parity = Json::array();
  for (size_t i = 0; i < TraversalQueries().size(); ++i) {
    double ratio = medians[0][i] > 0 ? medians[1][i] / medians[0][i] : 1.0;
    parity.push_back({{"query", TraversalQueries()[i]}, {"adaptive_over_all_large", ratio}});
  }
  report["parity"] = std::move(parity);
  return report;
}

Json BenchFootprint(const db::Database& db, std::optional<size_t> extra) {
  std::vector<std::pair<std::string, size_t>> rows = {{"all-Large", 0},
                                                      {"factor-64", 64},
                                                      {"factor-128", 128},
                                                      {"factor-256", 256},
                                                      {"all-Small", kUnbounded}};
  if (extra && *extra != 0 && *extra != 64 && *extra != 128 && *extra != 256) {
    rows.emplace_back(fmt::format("factor-{}", *extra), *extra);
  }
  auto view = db.Read();
  const auto& topology = view.engine().topology();
  Json report = {{"suite", "footprint"},
                 {"vertices", topology.vertex_count()},
                 {"edges", topology.edge_count()},
                 {"configs", Json::array()}};
  for (const auto& [name, threshold] : rows) {
    auto clone = topology.CloneWithThreshold(threshold);
    auto f = clone->Footprint();
    report["configs"].push_back({{"name", name},
                                 {"threshold", threshold == kUnbounded ? Json("inf") : Json(threshold)},
                                 {"topology_bytes", f.topology_bytes},
                                 {"small_collections", f.small_collections},
                                 {"large_collections", f.large_collections}});
  }
  return report;
}

Json BenchVector(const db::Database* db, const VectorBenchOptions& options) {
  std::shared_ptr<const vec::VectorCollection> coll;
  std::shared_ptr<vec::VectorCollection> owned;
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<float> gauss(0.0f, 1.0f);
  double build_ms = 0.0;
  std::string name;
  std::optional<db::ReadView> view;
  if (options.synthetic > 0) {
    vec::CollectionConfig config;
    config.dimension = options.dim;
    owned = std::make_shared<vec::VectorCollection>("synthetic", config);
    std::vector<vec::Point> points(options.synthetic);
    for (size_t i = 0; i < points.size(); ++i) {
      points[i].key = VertexId{0, i};
      points[i].vector.resize(options.dim);
      for (auto& x : points[i].vector) x = gauss(rng);
    }
    auto start = Clock::now();
    owned->BulkUpsert(points);
    build_ms = Ms(Clock::now() - start);
    coll = owned;
    name = "synthetic";
  } else {
    if (db == nullptr) Throw(ErrorCode::kInvalidArgument, "no database for the vector suite");
    view.emplace(db->Read());
    name = options.collection;
    if (name.empty()) {
      auto names = view->vectors().Names();
      if (names.empty()) Throw(ErrorCode::kUnknownCollection, "the database has no vector collection");
      name = names.front();
    }
    coll = view->vectors().Get(name);
  }

  auto points = coll->Snapshot();
  if (points.empty()) Throw(ErrorCode::kInvalidArgument, fmt::format("collection '{}' is empty", name));
  const uint32_t dim = coll->dimension();
  const size_t ef = options.ef_search ? options.ef_search : vec::kDefaultEfSearch;
  double recall_sum = 0.0;
  std::vector<double> latencies;
  for (size_t q = 0; q < options.queries; ++q) {
    FloatVector query(dim);
    for (auto& x : query) x = gauss(rng);
    // Exhaustive oracle: best scores first, ties by key.
    std::vector<std::pair<double, VertexId>> all;
    all.reserve(points.size());
    for (const auto& p : points) all.emplace_back(vec::Score(coll->metric(), query, p.vector), p.key);
    size_t k = std::min(options.k, all.size());
    std::partial_sort(all.begin(), all.begin() + k, all.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::set<VertexId> truth;
    for (size_t i = 0; i < k; ++i) truth.insert(all[i].second);
    std::vector<vec::ScoredHit> hits;
    for (size_t r = 0; r < std::max<size_t>(1, options.runs); ++r) {
      auto start = Clock::now();
      hits = coll->Search(query, options.k, ef);
      latencies.push_back(Ms(Clock::now() - start));
    }
    size_t found = 0;
    for (const auto& h : hits) found += truth.contains(h.key);
    recall_sum += k ? static_cast<double>(found) / k : 1.0;
  }
  double mean_latency = 0.0;
  for (double l : latencies) mean_latency += l;
  if (!latencies.empty()) mean_latency /= latencies.size();
  return Json{{"suite", "vector"},
              {"collection", name},
              {"points", points.size()},
              {"dimension", dim},
              {"metric", std::string(vec::MetricName(coll->metric()))},
              {"k", options.k},
              {"ef_search", ef},
              {"queries", options.queries},
              {"recall", options.queries ? recall_sum / options.queries : 0.0},
              {"mean_latency_ms", mean_latency},
              {"median_latency_ms", Median(latencies)},
              {"build_ms", build_ms}};
}

std::string RenderBench(const Json& r) {
  std::string out;
  const std::string suite = r.value("suite", "");
  if (suite == "traversal") {
    out += fmt::format("{:<64} | {:<40} | {}\n", "query", "all-Large (ms)", "adaptive (ms)");
    const auto& a = r["configs"][0]["queries"];
    const auto& b = r["configs"][1]["queries"];
    auto list = [](const Json& ms) {
      std::vector<std::string> v;
      for (const auto& x : ms) v.push_back(fmt::format("{:.3f}", x.get<double>()));
      return fmt::format("{{{}}}", fmt::join(v, ", "));
    };
    for (size_t i = 0; i < a.size(); ++i) {
      out += fmt::format("{:<64} | {:<40} | {}\n", a[i]["query"].get<std::string>(), list(a[i]["ms"]),
                         list(b[i]["ms"]));
    }
    for (const auto& p : r["parity"]) {
      out += fmt::format("median ratio {:.3f}  {}\n", p["adaptive_over_all_large"].get<double>(),
                         p["query"].get<std::string>());
    }
  } else if (suite == "footprint") {
    out += fmt::format("graph: {} vertices, {} edges\n", r["vertices"].get<uint64_t>(), r["edges"].get<uint64_t>());
    out += fmt::format("{:<12} | {:>9} | {:>14} | {:>10} | {:>8}\n", "config", "threshold", "topology bytes",
                       "MiB", "large");
    for (const auto& c : r["configs"]) {
      auto bytes = c["topology_bytes"].get<int64_t>();
      out += fmt::format("{:<12} | {:>9} | {:>14} | {:>10.2f} | {:>8}\n", c["name"].get<std::string>(),
                         c["threshold"].is_string() ? c["threshold"].get<std::string>()
                                                    : std::to_string(c["threshold"].get<uint64_t>()),
                         bytes, bytes / 1048576.0, c["large_collections"].get<uint64_t>());
    }
  } else if (suite == "vector") {
    out += fmt::format("collection {} ({} points, dim {}, {})\n", r["collection"].get<std::string>(),
                       r["points"].get<uint64_t>(), r["dimension"].get<uint32_t>(),
                       r["metric"].get<std::string>());
    out += fmt::format("recall@{} = {:.4f} over {} queries (ef_search {})\n", r["k"].get<uint64_t>(),
                       r["recall"].get<double>(), r["queries"].get<uint64_t>(), r["ef_search"].get<uint64_t>());
    out += fmt::format("latency: mean {:.3f} ms, median {:.3f} ms\n", r["mean_latency_ms"].get<double>(),
                       r["median_latency_ms"].get<double>());
  }
  return out;
}

}  // namespace arcforge::cli
