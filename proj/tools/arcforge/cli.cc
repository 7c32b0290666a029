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


#include "cli.h"

#include <fmt/format.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "arcforge/common/error.h"
#include "arcforge/db/database.h"
#include "arcforge/query/engine.h"
#include "arcforge/vec/distance.h"
#include "bench.h"
#include "dataset.h"
#include "loader.h"

namespace arcforge::cli {

namespace {

bool IsDataError(ErrorCode c) {
  return c == ErrorCode::kIoError || c == ErrorCode::kCorruptCheckpoint || c == ErrorCode::kCorruptLog;
}

// Exit status for an error raised while running statements.
int QueryExit(const std::exception& e) {
  const auto* a = dynamic_cast<const Error*>(&e);
  return a != nullptr && IsDataError(a->code()) ? kDataError : kQueryError;
}

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

enum class Format { kTable, kTsv, kJson };

struct Session {
  std::unique_ptr<db::Database> db;
  std::unique_ptr<query::QueryEngine> engine;
  query::Params params;
  query::ExecOptions exec;
  Format format = Format::kTable;
  bool timing = true;
};

void RunStatement(Session& s, const std::string& text, std::ostream& out, std::ostream& err) {
  auto r = s.engine->Run(text, s.params, s.exec);
  if (r.explain) {
    for (const auto& row : r.rows) out << query::RenderDatum(row[0], r.catalog) << "\n";
    return;
  }
  switch (s.format) {
    case Format::kTable: out << r.Render(false); break;
    case Format::kTsv: out << r.Render(true); break;
    case Format::kJson: out << r.ToJson().dump() << "\n"; break;
  }
  std::ostream& meta = s.format == Format::kTable ? out : err;
  if (r.writes.vertices_created || r.writes.edges_created || r.writes.properties_set) {
    meta << fmt::format("created {} vertices, {} edges; set {} properties\n", r.writes.vertices_created,
                        r.writes.edges_created, r.writes.properties_set);
  }
  if (s.timing) meta << fmt::format("({} rows, {:.3f} ms)\n", r.rows.size(), r.elapsed_ms);
}

db::DatabaseOptions DbOptions(const std::string& sync) {
  db::DatabaseOptions o;
  if (sync == "always") {
    o.wal.sync = wal::SyncMode::kPerAppend;
  } else if (sync == "group") {
    o.wal.sync = wal::SyncMode::kGroup;
  } else {
    o.wal.sync = wal::SyncMode::kNone;
  }
  return o;
}

Json StatsJson(const db::Database& db) {
  auto view = db.Read();
  const auto& engine = view.engine();
  const auto& catalog = engine.catalog();
  const auto& topology = engine.topology();
  Json j;
  j["dir"] = db.dir().string();
  j["vertices"] = topology.vertex_count();
  j["edges"] = topology.edge_count();
  Json labels = Json::object();
  for (const auto& l : catalog.labels(mem::LabelKind::kVertex)) labels[l.name] = topology.VertexCount(l.id);
  j["vertex_labels"] = labels;
  Json edge_labels = Json::array();
  for (const auto& l : catalog.labels(mem::LabelKind::kEdge)) edge_labels.push_back(l.name);
  j["edge_labels"] = edge_labels;
  auto f = engine.Footprint();
  j["memory"] = {{"topology_bytes", f.topology_bytes},
                 {"small_collections", f.small_collections},
                 {"large_collections", f.large_collections},
                 {"attribute_cache_bytes", f.cache_bytes},
                 {"edge_threshold", engine.options().edge_threshold}};
  j["out_degree"] = Degrees(engine, Direction::kOut).ToJson();
  j["in_degree"] = Degrees(engine, Direction::kIn).ToJson();
  Json colls = Json::array();
  for (const auto& name : view.vectors().Names()) {
    auto c = view.vectors().Get(name);
    auto st = c->Stats();
    colls.push_back({{"name", name},
                     {"dimension", c->dimension()},
                     {"metric", std::string(vec::MetricName(c->metric()))},
                     {"live_points", st.live_points},
                     {"physical_points", st.physical_points},
                     {"tombstones", st.tombstones},
                     {"segments", st.segments},
                     {"sealed_segments", st.sealed_segments}});
  }
  j["collections"] = colls;
  j["wal"] = {{"last_lsn", db.last_lsn()}};
  if (auto c = db.checkpoint_lsn()) j["wal"]["checkpoint_lsn"] = *c;
  j["schema"] = catalog.ToJson();
  return j;
}

std::string RenderStats(const Json& j) {
  std::string out = fmt::format("data dir     {}\n", j["dir"].get<std::string>());
  out += fmt::format("vertices     {}\n", j["vertices"].get<uint64_t>());
  for (const auto& [name, n] : j["vertex_labels"].items()) out += fmt::format("  {:<10} {}\n", name, n.get<uint64_t>());
  out += fmt::format("edges        {}\n", j["edges"].get<uint64_t>());
  const auto& m = j["memory"];
  out += fmt::format("topology     {} bytes ({:.2f} MiB), {} small / {} large collections, threshold {}\n",
                     m["topology_bytes"].get<int64_t>(), m["topology_bytes"].get<int64_t>() / 1048576.0,
                     m["small_collections"].get<uint64_t>(), m["large_collections"].get<uint64_t>(),
                     m["edge_threshold"].get<uint64_t>());
  for (const char* k : {"out_degree", "in_degree"}) {
    const auto& d = j[k];
    out += fmt::format("{:<12} max {}, p99 {}, median {}, mean {:.2f}\n", k, d["max"].get<uint64_t>(),
                       d["p99"].get<uint64_t>(), d["median"].get<double>(), d["mean"].get<double>());
  }
  for (const auto& c : j["collections"]) {
    out += fmt::format("collection   {} dim {} {}: {} live, {} segments ({} sealed), {} tombstones\n",
                       c["name"].get<std::string>(), c["dimension"].get<uint32_t>(), c["metric"].get<std::string>(),
                       c["live_points"].get<uint64_t>(), c["segments"].get<uint64_t>(),
                       c["sealed_segments"].get<uint64_t>(), c["tombstones"].get<uint64_t>());
  }
  out += fmt::format("wal          last lsn {}", j["wal"]["last_lsn"].get<uint64_t>());
  if (j["wal"].contains("checkpoint_lsn")) {
    out += fmt::format(", checkpoint lsn {}", j["wal"]["checkpoint_lsn"].get<uint64_t>());
  }
  return out + "\n";
}

void WriteJsonFile(const std::string& path, const Json& j) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) Throw(ErrorCode::kIoError, fmt::format("cannot write {}", path));
  f << j.dump(2) << "\n";
}

const char* kShellHelp =
    "Statements end with ';'. Commands:\n"
    "  :help                 this text\n"
    "  :param <name> <json>  bind $name\n"
    "  :params               list bound parameters\n"
    "  :format table|tsv|json\n"
    "  :quit\n";

int Shell(Session& s, std::istream& in, std::ostream& out, std::ostream& err, bool interactive) {
  bool failed = false;
  std::string buffer, line;
  auto run = [&](const std::string& text) {
    for (const auto& stmt : SplitStatements(text)) {
      try {
        RunStatement(s, stmt, out, err);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        failed = true;
      }
    }
  };
  while (true) {
    if (interactive) out << (buffer.empty() ? "arcforge> " : "      ... ") << std::flush;
    if (!std::getline(in, line)) break;
    std::string t = Trim(line);
    if (buffer.empty() && t.starts_with(":")) {
      std::istringstream cmd(t);
      std::string word;
      cmd >> word;
      if (word == ":quit" || word == ":exit" || word == ":q") break;
      if (word == ":help") {
        out << kShellHelp;
      } else if (word == ":param") {
        std::string name, value;
        cmd >> name;
        std::getline(cmd, value);
        try {
          if (name.starts_with("$")) name.erase(0, 1);
          auto p = query::ParamsFromJson(Json{{name, Json::parse(value)}});
          s.params[name] = p.at(name);
        } catch (const std::exception& e) {
          err << "error: " << e.what() << "\n";
        }
      } else if (word == ":params") {
        for (const auto& [k, v] : s.params) out << "$" << k << " = " << v.ToJson().dump() << "\n";
      } else if (word == ":format") {
        std::string f;
        cmd >> f;
        if (f == "table") s.format = Format::kTable;
        else if (f == "tsv") s.format = Format::kTsv;
        else if (f == "json") s.format = Format::kJson;
        else err << "error: unknown format '" << f << "'\n";
      } else {
        err << "error: unknown command " << word << " (try :help)\n";
      }
      continue;
    }
    buffer += line + "\n";
    // Run once the buffer ends in a complete statement.
    auto stmts = SplitStatements(buffer + "\x01");
    if (!stmts.empty() && Trim(stmts.back()) == "\x01") {
      run(buffer);
      buffer.clear();
    }
  }
  if (!Trim(buffer).empty()) run(buffer);
  return failed && !interactive ? kQueryError : kOk;
}

}  // namespace

std::vector<std::string> SplitStatements(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  char quote = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quote) {
      cur += c;
      if (c == '\\' && i + 1 < text.size()) {
        cur += text[++i];
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (c == '\'' || c == '"' || c == '`') {
      quote = c;
      cur += c;
    } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      cur += '\n';
    } else if (c == ';') {
      if (!Trim(cur).empty()) out.push_back(Trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!Trim(cur).empty()) out.push_back(Trim(cur));
  return out;
}

int Main(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"ArcForge: embeddable graph and vector database"};
  app.require_subcommand(1);
  std::string data_dir;
  if (const char* env = std::getenv("ARCFORGE_DATA")) data_dir = env;
  std::string sync = "always";
  app.add_option("-d,--data", data_dir, "Data directory (default: $ARCFORGE_DATA)");
  app.add_option("--sync", sync, "WAL durability")->check(CLI::IsMember({"always", "group", "none"}));

  auto* init = app.add_subcommand("init", "Create a data directory and declare its schema");
  std::string init_dir, schema_file;
  init->add_option("dir", init_dir, "Data directory");
  init->add_option("--schema", schema_file, "Schema JSON file")->check(CLI::ExistingFile);

  auto* load = app.add_subcommand("load", "Ingest CSV files described by a manifest");
  std::string manifest, rejects;
  std::optional<double> max_reject;
  size_t batch_rows = 10000;
  bool load_json = false;
  load->add_option("manifest", manifest, "Manifest JSON file")->required()->check(CLI::ExistingFile);
  load->add_option("--rejects", rejects, "Rejects file (default: <manifest>.rejects)");
  load->add_option("--max-reject-ratio", max_reject, "Fail when rejected/rows exceeds this");
  load->add_option("--batch-rows", batch_rows, "Rows per durable write batch")->check(CLI::PositiveNumber);
  load->add_flag("--json", load_json, "Print the report as JSON");

  Session session;
  std::string params_json, params_file, format = "table";
  bool no_optimize = false, no_timing = false;
  auto add_exec_options = [&](CLI::App* cmd) {
    cmd->add_option("--params", params_json, "Parameters as a JSON object");
    cmd->add_option("--params-file", params_file, "Parameters JSON file")->check(CLI::ExistingFile);
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "tsv", "json"}));
    cmd->add_option("--batch-size", session.exec.batch_size, "Rows per batch")->check(CLI::PositiveNumber);
    cmd->add_option("--ef", session.exec.ef_search, "HNSW ef_search")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-optimize", no_optimize, "Skip plan rewrites");
    cmd->add_flag("--no-timing", no_timing, "Do not print timing");
  };

  auto* shell = app.add_subcommand("shell", "Interactive query shell");
  add_exec_options(shell);

  auto* query_cmd = app.add_subcommand("query", "Run statements");
  std::string text, file;
  auto* text_opt = query_cmd->add_option("-e,--execute", text, "Statement text");
  auto* file_opt = query_cmd->add_option("-f,--file", file, "Script file")->check(CLI::ExistingFile);
  text_opt->excludes(file_opt);
  add_exec_options(query_cmd);

  auto* explain = app.add_subcommand("explain", "Print the plan of a statement");
  explain->add_option("-e,--execute", text, "Statement text")->required();
  explain->add_option("--params", params_json, "Parameters as a JSON object");
  explain->add_flag("--no-optimize", no_optimize, "Skip plan rewrites");

  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  std::string suite, json_out;
  std::optional<size_t> threshold;
  TraversalOptions traversal;
  VectorBenchOptions vector_opts;
  bench->add_option("suite", suite, "traversal, footprint or vector")
      ->required()
      ->check(CLI::IsMember({"traversal", "footprint", "vector"}));
  bench->add_option("--threshold", threshold, "Edge collection threshold for the adaptive configuration");
  bench->add_option("--runs", traversal.runs, "Timed runs per query")->check(CLI::PositiveNumber);
  bench->add_option("--json", json_out, "Write the report as JSON to this file");
  bench->add_option("--collection", vector_opts.collection, "Vector collection (vector suite)");
  bench->add_option("--synthetic", vector_opts.synthetic, "Random points in a standalone collection");
  bench->add_option("--dim", vector_opts.dim, "Dimension of synthetic points")->check(CLI::PositiveNumber);
  bench->add_option("-k", vector_opts.k, "Neighbors per query")->check(CLI::PositiveNumber);
  bench->add_option("--queries", vector_opts.queries, "Queries")->check(CLI::PositiveNumber);
  bench->add_option("--ef", vector_opts.ef_search, "HNSW ef_search");

  auto* checkpoint = app.add_subcommand("checkpoint", "Write a checkpoint");
  bool prune = false;
  checkpoint->add_flag("--prune", prune, "Delete log segments covered by the checkpoint");

  auto* stats = app.add_subcommand("stats", "Counts, memory and log positions");
  bool stats_json = false;
  stats->add_flag("--json", stats_json, "Print as JSON");

  auto* writeback = app.add_subcommand("writeback", "Run a procedure and store its result in a field");
  std::string procedure, field;
  double damping = 0.85, tol = 1e-8;
  int64_t max_iter = 50;
  writeback->add_option("procedure", procedure)->required()->check(CLI::IsMember({"pagerank", "wcc"}));
  writeback->add_option("field", field)->required();
  writeback->add_option("--damping", damping);
  writeback->add_option("--max-iter", max_iter);
  writeback->add_option("--tol", tol);

  auto* generate = app.add_subcommand("generate", "Write a synthetic person/knows CSV dataset and manifest");
  std::string gen_dir;
  DatasetOptions gen;
  generate->add_option("dir", gen_dir, "Output directory")->required();
  generate->add_option("--persons", gen.persons);
  generate->add_option("--edges", gen.edges);
  generate->add_option("--dim", gen.dim, "Embedding dimension (0: none)");
  generate->add_option("--seed", gen.seed);
  generate->add_option("--alpha", gen.alpha, "Power-law exponent of in-degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (*generate) {
    try {
      WriteDataset(gen_dir, gen);
      out << fmt::format("wrote {} persons and {} edges to {}\n", gen.persons, gen.persons > 1 ? gen.edges : 0,
                         gen_dir);
      return kOk;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kDataError;
    }
  }

  if (*init && !init_dir.empty()) data_dir = init_dir;
  bool synthetic_only = *bench && suite == "vector" && vector_opts.synthetic > 0;
  if (data_dir.empty() && !synthetic_only) {
    err << "error: no data directory; pass --data or set ARCFORGE_DATA\n";
    return kUsage;
  }
  auto options = DbOptions(sync);
  const bool query_like = *shell || *query_cmd || *explain || *writeback;

  try {
    if (*bench && suite == "traversal") {
      if (threshold) traversal.threshold = *threshold;
      auto report = BenchTraversal(data_dir, options, traversal);
      out << RenderBench(report);
      if (!json_out.empty()) WriteJsonFile(json_out, report);
      return kOk;
    }
    if (synthetic_only) {
      vector_opts.runs = traversal.runs;
      auto report = BenchVector(nullptr, vector_opts);
      out << RenderBench(report);
      if (!json_out.empty()) WriteJsonFile(json_out, report);
      return kOk;
    }

    session.db = db::Database::Open(data_dir, options);
    session.engine = std::make_unique<query::QueryEngine>(*session.db);
    auto& db = *session.db;

    if (*init) {
      if (!schema_file.empty()) {
        Json schema;
        try {
          schema = Json::parse(ReadFile(schema_file));
        } catch (const Json::parse_error& e) {
          Throw(ErrorCode::kInvalidArgument, fmt::format("schema {}: {}", schema_file, e.what()));
        }
        db.Write([&](db::Writer& w) { ApplySchema(w, schema); });
      }
      auto view = db.Read();
      const auto& catalog = view.engine().catalog();
      out << fmt::format("initialized {}: {} vertex labels, {} edge labels, {} collections\n", data_dir,
                         catalog.labels(mem::LabelKind::kVertex).size(),
                         catalog.labels(mem::LabelKind::kEdge).size(), view.vectors().Names().size());
      return kOk;
    }
    if (*load) {
      LoadOptions lo;
      if (!rejects.empty()) lo.rejects_path = rejects;
      lo.batch_rows = batch_rows;
      auto start = std::chrono::steady_clock::now();
      auto report = Load(db, manifest, lo);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      double bound = max_reject.value_or(LoadManifest::Read(manifest).max_reject_ratio);
      if (load_json) {
        auto j = report.ToJson();
        j["elapsed_ms"] = ms;
        out << j.dump(2) << "\n";
      } else {
        out << fmt::format("loaded {} vertices, {} edges, {} vectors in {:.1f} ms\n", report.vertices,
                           report.edges, report.vectors, ms);
        out << fmt::format("rows {}, rejected {} ({:.4f}); rejects in {}\n", report.rows, report.rejected,
                           report.reject_ratio(), report.rejects_path.string());
        for (const auto& [name, d] : {std::pair{"out", report.out_degrees}, {"in", report.in_degrees}}) {
          out << fmt::format("{}-degree: max {}, p99 {}, median {}, mean {:.2f}\n", name, d.max, d.p99, d.median,
                             d.mean);
        }
      }
      if (report.reject_ratio() > bound) {
        err << fmt::format("error: reject ratio {:.4f} exceeds {:.4f}\n", report.reject_ratio(), bound);
        return kDataError;
      }
      return kOk;
    }
    if (*checkpoint) {
      Lsn lsn = db.Checkpoint();
      out << fmt::format("checkpoint at lsn {}\n", lsn);
      if (prune) out << fmt::format("pruned {} log segments\n", db.Prune(lsn));
      return kOk;
    }
    if (*stats) {
      auto j = StatsJson(db);
      out << (stats_json ? j.dump(2) + "\n" : RenderStats(j));
      return kOk;
    }
    if (*bench) {
      Json report = suite == "footprint" ? BenchFootprint(db, threshold) : [&] {
        vector_opts.runs = traversal.runs;
        return BenchVector(&db, vector_opts);
      }();
      out << RenderBench(report);
      if (!json_out.empty()) WriteJsonFile(json_out, report);
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return query_like ? QueryExit(e) : kDataError;
  }

  // Statement execution.
  try {
    if (!params_file.empty()) session.params = query::ParamsFromJson(Json::parse(ReadFile(params_file)));
    if (!params_json.empty()) {
      for (auto& [k, v] : query::ParamsFromJson(Json::parse(params_json))) session.params[k] = v;
    }
  } catch (const std::exception& e) {
    err << "error: bad parameters: " << e.what() << "\n";
    return kUsage;
  }
  session.exec.optimize = !no_optimize;
  session.timing = !no_timing;
  session.format = format == "tsv" ? Format::kTsv : format == "json" ? Format::kJson : Format::kTable;

  try {
    if (*explain) {
      out << session.engine->Explain(text, session.params, !no_optimize);
      return kOk;
    }
    if (*writeback) {
      std::string stmt =
          procedure == "pagerank"
              ? fmt::format("CALL writeback('pagerank', '{}', {}, {}, {}) YIELD updated RETURN updated", field,
                            damping, max_iter, tol)
              : fmt::format("CALL writeback('wcc', '{}') YIELD updated RETURN updated", field);
      RunStatement(session, stmt, out, err);
      return kOk;
    }
    if (*query_cmd) {
      if (text.empty() && file.empty()) {
        err << "error: query needs -e <text> or -f <file>\n";
        return kUsage;
      }
      std::string script = file.empty() ? text : ReadFile(file);
      auto stmts = SplitStatements(script);
      if (stmts.empty()) {
        err << "error: no statement\n";
        return kUsage;
      }
      for (const auto& s : stmts) RunStatement(session, s, out, err);
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return QueryExit(e);
  }
  // shell
  return Shell(session, in, out, err, &in == &std::cin && ::isatty(STDIN_FILENO));
}

}  // namespace arcforge::cli
