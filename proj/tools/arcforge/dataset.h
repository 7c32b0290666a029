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

#include "arcforge/common/file_util.h"

namespace arcforge::cli {

struct DatasetOptions {
  uint64_t persons = 10000;
  uint64_t edges = 100000;
  uint32_t dim = 0;        // 0: no embedding column
  uint64_t seed = 1;
  double alpha = 0.9;      // skew of the in-degree distribution
  char delimiter = '|';
};

/// Writes an LDBC-style person/knows dataset: person.csv, knows.csv,
/// schema.json and manifest.json under `dir`. Edge targets follow a
/// power law; sources are uniform.
void WriteDataset(const fs::path& dir, const DatasetOptions& options);

}  // namespace arcforge::cli
