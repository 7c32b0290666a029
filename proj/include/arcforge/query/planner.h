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

#include <map>
#include <string>

#include "arcforge/query/ast.h"
#include "arcforge/query/plan.h"

namespace arcforge::db {
class Database;
}
namespace arcforge::vec {
class VectorStore;
}

namespace arcforge::query {

using Params = std::map<std::string, PropertyValue>;

/// Converts a JSON object of parameters; numeric arrays become vectors.
Params ParamsFromJson(const Json& j);

/// What the planner may consult. The caller holds the state stable (a read
/// view or the writer) for as long as the plan is used.
struct PlanContext {
  const mem::Catalog* catalog = nullptr;
  const db::Database* db = nullptr;        // vector bindings
  const vec::VectorStore* vectors = nullptr;
  const Params* params = nullptr;          // only their types are used
};

/// True when the statement writes (CREATE, CREATE VECTOR INDEX, writeback).
bool Mutates(const Query& query);

/// Semantic analysis and plan construction. Throws SemanticError.
Plan BuildPlan(const Query& query, const PlanContext& ctx);

/// Rule-based rewrites. Today: a vector-ordered top-k over a label scan with
/// an indexed vector field becomes a VertexVectorScan, absorbing conjunctive
/// payload predicates. Plans that do not match are left alone.
void Optimize(Plan& plan, const PlanContext& ctx);

}  // namespace arcforge::query
