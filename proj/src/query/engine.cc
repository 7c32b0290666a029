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

#include "arcforge/query/engine.h"

#include <fmt/format.h>

#include <chrono>
#include <sstream>

#include "arcforge/db/database.h"
#include "arcforge/query/parser.h"

namespace arcforge::query {

namespace {

Plan PlanFor(const Query& q, const PlanContext& ctx, bool optimize) {
  Plan plan = BuildPlan(q, ctx);
  if (optimize) Optimize(plan, ctx);
  return plan;
}

}  // namespace

std::string QueryResult::Render(bool tsv) const {
  std::vector<std::vector<std::string>> cells;
  cells.push_back(columns);
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (const auto& d : row) line.push_back(RenderDatum(d, catalog));
    cells.push_back(std::move(line));
  }
  std::string out;
  if (tsv) {
    for (const auto& line : cells) out += fmt::format("{}\n", fmt::join(line, "\t"));
    return out;
  }
  std::vector<size_t> width(columns.size(), 0);
  for (const auto& line : cells) {
    for (size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  for (size_t l = 0; l < cells.size(); ++l) {
    std::string text;
    for (size_t i = 0; i < cells[l].size(); ++i) {
      if (i) text += " | ";
      text += fmt::format("{:<{}}", cells[l][i], width[i]);
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + "\n";
    if (l == 0) {
      std::string rule;
      for (size_t i = 0; i < width.size(); ++i) {
        if (i) rule += "-+-";
        rule += std::string(width[i], '-');
      }
      out += rule + "\n";
    }
  }
  return out;
}

Json QueryResult::ToJson() const {
  Json j;
  j["columns"] = columns;
  j["rows"] = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (const auto& d : row) r.push_back(DatumToJson(d, catalog));
    j["rows"].push_back(std::move(r));
  }
  j["elapsed_ms"] = elapsed_ms;
  j["writes"] = {{"vertices_created", writes.vertices_created},
                 {"edges_created", writes.edges_created},
                 {"properties_set", writes.properties_set}};
  return j;
}

QueryResult QueryEngine::Run(std::string_view text, const Params& params,
                             const ExecOptions& options) {
  auto start = std::chrono::steady_clock::now();
  Query q = Parse(text);
  QueryResult out;
  auto finish = [&](const Plan& plan, const ExecContext& ctx) {
    out.plan = plan.ToString();
    out.catalog = ctx.engine->catalog();
    if (q.explain) {
      out.explain = true;
      out.columns = {"plan"};
      std::istringstream lines(out.plan);
      for (std::string line; std::getline(lines, line);) out.rows.push_back({PropertyValue(line)});
      return;
    }
    ExecResult r = Execute(plan, ctx);
    out.columns = std::move(r.columns);
    out.rows = std::move(r.rows);
    out.operators = std::move(r.operators);
    out.writes = r.writes;
  };
  if (Mutates(q) && !q.explain) {
    db_.Write([&](db::Writer& w) {
      PlanContext pctx{&w.engine().catalog(), &w.db(), &w.vectors(), &params};
      Plan plan = PlanFor(q, pctx, options.optimize);
      ExecContext ctx{&w.engine(), &w.vectors(), &w.db(), &w, &params, options};
      finish(plan, ctx);
    });
  } else {
    auto view = db_.Read();
    PlanContext pctx{&view.engine().catalog(), &view.db(), &view.vectors(), &params};
    Plan plan = PlanFor(q, pctx, options.optimize);
    ExecContext ctx{&view.engine(), &view.vectors(), &view.db(), nullptr, &params, options};
    finish(plan, ctx);
  }
  out.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string QueryEngine::Explain(std::string_view text, const Params& params, bool optimize) {
  Query q = Parse(text);
  auto view = db_.Read();
  PlanContext pctx{&view.engine().catalog(), &view.db(), &view.vectors(), &params};
  return PlanFor(q, pctx, optimize).ToString();
}

}  // namespace arcforge::query
