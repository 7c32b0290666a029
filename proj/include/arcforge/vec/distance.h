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
#include <span>
#include <string_view>

namespace arcforge::vec {

enum class Metric : uint8_t { kCosine = 0, kEuclidean = 1, kDot = 2 };

std::string_view MetricName(Metric metric);
Metric ParseMetric(std::string_view name);  // InvalidArgument

/// Reference semantics, one value per metric:
///   cosine    -> dot(a,b) / (|a||b|), 0 when either norm is 0
///   euclidean -> sqrt(sum (a_i - b_i)^2)
///   dot       -> sum a_i b_i
/// Throws DimensionMismatch on unequal lengths.
double Distance(Metric metric, std::span<const float> a, std::span<const float> b);

/// Similarity score, higher is closer: cosine and dot as above, euclidean is
/// the negated distance.
double Score(Metric metric, std::span<const float> a, std::span<const float> b);

double Dot(std::span<const float> a, std::span<const float> b);
double Norm(std::span<const float> a);

/// Score against a fixed query, with the query norm hoisted out. Candidate
/// norms may be supplied precomputed.
class QueryScorer {
 public:
  QueryScorer(Metric metric, std::span<const float> query);

  double operator()(std::span<const float> point) const;
  double operator()(std::span<const float> point, double point_norm) const;

  Metric metric() const { return metric_; }
  std::span<const float> query() const { return query_; }

 private:
  Metric metric_;
  std::span<const float> query_;
  double query_norm_;
};

}  // namespace arcforge::vec
