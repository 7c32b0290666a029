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

#include "arcforge/vec/distance.h"

#include <fmt/format.h>

#include <cmath>

#include "arcforge/common/error.h"

namespace arcforge::vec {

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kCosine: return "cosine";
    case Metric::kEuclidean: return "euclidean";
    case Metric::kDot: return "dot";
  }
  return "?";
}

Metric ParseMetric(std::string_view name) {
  if (name == "cosine") return Metric::kCosine;
  if (name == "euclidean" || name == "l2") return Metric::kEuclidean;
  if (name == "dot" || name == "ip") return Metric::kDot;
  Throw(ErrorCode::kInvalidArgument, fmt::format("unknown metric '{}'", name));
}

namespace {

void CheckDims(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    Throw(ErrorCode::kDimensionMismatch,
          fmt::format("vectors have dimensions {} and {}", a.size(), b.size()));
  }
}

// Four independent accumulators so the loop vectorizes without -ffast-math.
double DotUnchecked(const float* a, const float* b, size_t n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += static_cast<double>(a[i]) * b[i];
    s1 += static_cast<double>(a[i + 1]) * b[i + 1];
    s2 += static_cast<double>(a[i + 2]) * b[i + 2];
    s3 += static_cast<double>(a[i + 3]) * b[i + 3];
  }
  for (; i < n; ++i) s0 += static_cast<double>(a[i]) * b[i];
  return (s0 + s1) + (s2 + s3);
}

double SquaredL2Unchecked(const float* a, const float* b, size_t n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    double d0 = static_cast<double>(a[i]) - b[i];
    double d1 = static_cast<double>(a[i + 1]) - b[i + 1];
    double d2 = static_cast<double>(a[i + 2]) - b[i + 2];
    double d3 = static_cast<double>(a[i + 3]) - b[i + 3];
    s0 += d0 * d0;
    s1 += d1 * d1;
    s2 += d2 * d2;
    s3 += d3 * d3;
  }
  for (; i < n; ++i) {
    double d = static_cast<double>(a[i]) - b[i];
    s0 += d * d;
  }
  return (s0 + s1) + (s2 + s3);
}

double Cosine(double dot, double norm_a, double norm_b) {
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return dot / (norm_a * norm_b);
}

}  // namespace

double Dot(std::span<const float> a, std::span<const float> b) {
  CheckDims(a, b);
  return DotUnchecked(a.data(), b.data(), a.size());
}

double Norm(std::span<const float> a) { return std::sqrt(DotUnchecked(a.data(), a.data(), a.size())); }

double Distance(Metric metric, std::span<const float> a, std::span<const float> b) {
  CheckDims(a, b);
  switch (metric) {
    case Metric::kCosine: return Cosine(DotUnchecked(a.data(), b.data(), a.size()), Norm(a), Norm(b));
    case Metric::kEuclidean: return std::sqrt(SquaredL2Unchecked(a.data(), b.data(), a.size()));
    case Metric::kDot: return DotUnchecked(a.data(), b.data(), a.size());
  }
  return 0.0;
}

double Score(Metric metric, std::span<const float> a, std::span<const float> b) {
  double d = Distance(metric, a, b);
  return metric == Metric::kEuclidean ? -d : d;
}

QueryScorer::QueryScorer(Metric metric, std::span<const float> query)
    : metric_(metric), query_(query), query_norm_(Norm(query)) {}

double QueryScorer::operator()(std::span<const float> point) const {
  return (*this)(point, metric_ == Metric::kCosine ? Norm(point) : 0.0);
}

double QueryScorer::operator()(std::span<const float> point, double point_norm) const {
  CheckDims(query_, point);
  switch (metric_) {
    case Metric::kCosine:
      return Cosine(DotUnchecked(query_.data(), point.data(), point.size()), query_norm_, point_norm);
    case Metric::kEuclidean:
      return -std::sqrt(SquaredL2Unchecked(query_.data(), point.data(), point.size()));
    case Metric::kDot: return DotUnchecked(query_.data(), point.data(), point.size());
  }
  return 0.0;
}

}  // namespace arcforge::vec
