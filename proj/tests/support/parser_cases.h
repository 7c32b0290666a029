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

#include <string>
#include <vector>

namespace arcforge::testing {

inline const char* kTable2[] = {
    "MATCH (m:person)-[e:knows * 2]->(n:person) RETURN n LIMIT 1000;",
    "MATCH (m:person)-[e:knows]->(n:person) RETURN n LIMIT 1000;",
    "MATCH (m:person) RETURN m.firstName LIMIT 1000;",
    "MATCH (m:person) RETURN m.firstName LIMIT 1000;",
};

/// Expected trees of kTable2[0], kTable2[1] and kTable2[2] (= kTable2[3]).
inline const std::string kTable2Goldens[] = {
    "(query (match (path (node m :person) (rel -> e :knows *2..2) (node n :person))) "
    "(return n (limit 1000)))",
    "(query (match (path (node m :person) (rel -> e :knows) (node n :person))) "
    "(return n (limit 1000)))",
    "(query (match (path (node m :person))) (return (. m firstName) (limit 1000)))",
};

inline std::string Replace(std::string s, const std::string& from, const std::string& to) {
  auto pos = s.find(from);
  if (pos == std::string::npos) return {};
  return s.replace(pos, from.size(), to);
}

// Every mutation is invalid by construction; an empty string means the
// mutation does not apply to this text.
inline std::vector<std::string> Mutations(const std::string& q) {
  std::vector<std::string> out = {
      Replace(q, "(", ""),
      Replace(q, ")", ""),
      Replace(q, "[", ""),
      Replace(q, "]", ""),
      Replace(q, " RETURN", ""),
      q.substr(0, q.find(" RETURN")),
      Replace(q, "MATCH", "MACTH"),
      Replace(q, "RETURN", "RETRUN"),
      Replace(q, "LIMIT", "LIMT"),
      Replace(q, "->", "=>"),
      Replace(q, "MATCH", "MATCH ,"),
      Replace(q, ":", "::"),
      Replace(q, "LIMIT 1000", "LIMIT -1000"),
      Replace(q, "LIMIT 1000;", "LIMIT 'abc;"),
      Replace(q, ":person", ":"),
      Replace(q, "RETURN", "RETURN ,"),
      Replace(q, "LIMIT 1000", "LIMIT 1000 LIMIT 1000"),
  };
  std::erase_if(out, [&](const std::string& s) { return s.empty() || s == q; });
  return out;
}

}  // namespace arcforge::testing
