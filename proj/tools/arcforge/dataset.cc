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


#include "dataset.h"

#include <fmt/format.h>
#include <fmt/os.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "arcforge/common/value.h"

namespace arcforge::cli {

void WriteDataset(const fs::path& dir, const DatasetOptions& o) {
  fs::create_directories(dir);
  std::mt19937_64 rng(o.seed);
  const char d = o.delimiter;

  Json person_fields = Json::array({{{"name", "firstName"}, {"type", "text"}},
                                    {{"name", "age"}, {"type", "int"}},
                                    {{"name", "score"}, {"type", "float"}}});
  if (o.dim > 0) person_fields.push_back({{"name", "emb"}, {"type", "vector"}, {"dim", o.dim}});
  Json schema = {{"vertex_labels", {{{"name", "person"}, {"fields", person_fields}}}},
                 {"edge_labels", {{{"name", "knows"}, {"fields", {{{"name", "since"}, {"type", "int"}}}}}}}};
  if (o.dim > 0) {
    schema["collections"] = {{{"name", "person_emb"}, {"label", "person"}, {"field", "emb"}, {"metric", "cosine"}}};
  }

  {
    auto out = fmt::output_file((dir / "person.csv").string());
    out.print("id{0}firstName{0}age{0}score{1}\n", d, o.dim > 0 ? fmt::format("{}emb", d) : "");
    std::uniform_int_distribution<int> age(18, 80);
    std::uniform_real_distribution<double> score(0.0, 1.0);
    std::normal_distribution<float> gauss(0.0f, 1.0f);
    std::vector<float> emb(o.dim);
    for (uint64_t i = 0; i < o.persons; ++i) {
      out.print("{1}{0}p{1}{0}{2}{0}{3:.6f}", d, i, age(rng), score(rng));
      if (o.dim > 0) {
        for (auto& x : emb) x = gauss(rng);
        out.print("{}{:.5f}", d, fmt::join(emb, ";"));
      }
      out.print("\n");
    }
  }

  {
    auto out = fmt::output_file((dir / "knows.csv").string());
    out.print("Person1.id{0}Person2.id{0}since\n", d);
    if (o.persons > 1) {
      std::vector<double> weights(o.persons);
      for (uint64_t i = 0; i < o.persons; ++i) weights[i] = 1.0 / std::pow(static_cast<double>(i + 1), o.alpha);
      std::discrete_distribution<uint64_t> target(weights.begin(), weights.end());
      std::uniform_int_distribution<uint64_t> source(0, o.persons - 1);
      std::uniform_int_distribution<int> year(2010, 2024);
      std::vector<uint64_t> perm(o.persons);
      for (uint64_t i = 0; i < o.persons; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (uint64_t e = 0; e < o.edges;) {
        uint64_t s = source(rng), t = perm[target(rng)];
        if (s == t) continue;
        out.print("{1}{0}{2}{0}{3}\n", d, s, t, year(rng));
        ++e;
      }
    }
  }

  Json person_columns = {{"firstName", "firstName"}, {"age", "age"}, {"score", "score"}};
  if (o.dim > 0) person_columns["emb"] = "emb";
  Json manifest = {{"delimiter", std::string(1, d)},
                   {"schema", schema},
                   {"files",
                    {{{"path", "person.csv"}, {"kind", "vertex"}, {"label", "person"}, {"id", "id"},
                      {"columns", person_columns}},
                     {{"path", "knows.csv"},
                      {"kind", "edge"},
                      {"label", "knows"},
                      {"src", "Person1.id"},
                      {"dst", "Person2.id"},
                      {"src_label", "person"},
                      {"dst_label", "person"},
                      {"columns", {{"since", "since"}}}}}}};
  fmt::output_file((dir / "schema.json").string()).print("{}\n", schema.dump(2));
  fmt::output_file((dir / "manifest.json").string()).print("{}\n", manifest.dump(2));
}

}  // namespace arcforge::cli
