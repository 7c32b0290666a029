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
#include <fstream>
#include <sstream>

#include "arcforge/common/error.h"
#include "arcforge/db/database.h"
#include "arcforge/query/engine.h"
#include "bench.h"
#include "cli.h"
#include "csv.h"
#include "dataset.h"
#include "loader.h"
#include "support/history.h"
#include "support/shell_suite.h"

namespace arcforge::cli {
namespace {

using testing::ScratchDir;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Invoke(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "arcforge");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = Main(static_cast<int>(args.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

void WriteText(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::trunc);
  f << text;
}

// Data lines of a CSV file: every line after the header.
uint64_t DataLines(const fs::path& p) {
  std::ifstream f(p);
  std::string line;
  uint64_t n = 0;
  while (std::getline(f, line)) ++n;
  return n == 0 ? 0 : n - 1;
}

const char* kToySchema = R"({
  "vertex_labels": [{"name": "person", "fields": [{"name": "name", "type": "text"},
                                                  {"name": "age", "type": "int"}]}],
  "edge_labels": [{"name": "knows", "fields": [{"name": "since", "type": "int"}]}]
})";

// person.csv and knows.csv with the given data rows, plus manifest.json.
fs::path WriteToy(const fs::path& dir, const std::string& persons, const std::string& knows,
                  double max_reject_ratio = 0.0) {
  WriteText(dir / "person.csv", "id,name,age\n" + persons);
  WriteText(dir / "knows.csv", "src,dst,since\n" + knows);
  Json manifest = {{"delimiter", ","},
                   {"max_reject_ratio", max_reject_ratio},
                   {"schema", Json::parse(kToySchema)},
                   {"files",
                    {{{"path", "person.csv"}, {"kind", "vertex"}, {"label", "person"}, {"id", "id"},
                      {"columns", {{"name", "name"}, {"age", "age"}}}},
                     {{"path", "knows.csv"}, {"kind", "edge"}, {"label", "knows"}, {"src", "src"},
                      {"dst", "dst"}, {"src_label", "person"}, {"dst_label", "person"},
                      {"columns", {{"since", "since"}}}}}}};
  WriteText(dir / "manifest.json", manifest.dump(2));
  return dir / "manifest.json";
}

fs::path Generate(const fs::path& dir, uint64_t persons, uint64_t edges, uint32_t dim) {
  WriteDataset(dir, {.persons = persons, .edges = edges, .dim = dim, .seed = 3});
  return dir / "manifest.json";
}

// ---- statement splitting and CSV ----

TEST(SplitStatementsTest, SplitsOutsideQuotesAndComments) {
  auto s = SplitStatements(
      "MATCH (n) RETURN 'a;b';\n// c; d\n  ;MATCH (m) RETURN \"x\\\";\" // tail; more\n;;");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], "MATCH (n) RETURN 'a;b'");
  EXPECT_EQ(s[1], "MATCH (m) RETURN \"x\\\";\"");
  EXPECT_TRUE(SplitStatements(" ; // only a comment\n").empty());
}

TEST(CsvReaderTest, QuotingMultilineAndCrlf) {
  std::istringstream in("a|\"b|c\"|\"say \"\"hi\"\"\"\r\n1|\"two\nlines\"|\r\nlast|x|y");
  CsvReader r(in, '|');
  std::vector<std::string> f;
  ASSERT_TRUE(r.Next(f));
  EXPECT_EQ(f, (std::vector<std::string>{"a", "b|c", "say \"hi\""}));
  EXPECT_EQ(r.line(), 1u);
  ASSERT_TRUE(r.Next(f));
  EXPECT_EQ(f, (std::vector<std::string>{"1", "two\nlines", ""}));
  EXPECT_EQ(r.line(), 2u);
  ASSERT_TRUE(r.Next(f));
  EXPECT_EQ(f, (std::vector<std::string>{"last", "x", "y"}));
  EXPECT_EQ(r.line(), 4u);
  EXPECT_FALSE(r.Next(f));

  std::istringstream bad("a,\"open\n");
  CsvReader rb(bad, ',');
  EXPECT_THROW(rb.Next(f), Error);
}

// ---- load ----

TEST(LoadTest, HeaderOnlyFileLoadsNothing) {
  ScratchDir data("cli-data"), src("cli-src");
  auto manifest = WriteToy(src.path(), "", "");
  auto db = db::Database::Open(data.path());
  auto report = Load(*db, manifest);
  EXPECT_EQ(report.vertices, 0u);
  EXPECT_EQ(report.edges, 0u);
  EXPECT_EQ(report.vectors, 0u);
  EXPECT_EQ(report.rejected, 0u);
  EXPECT_EQ(db->Read().engine().topology().vertex_count(), 0u);
}

TEST(LoadTest, ToyFilesCount) {
  ScratchDir data("cli-data"), src("cli-src");
  auto manifest = WriteToy(src.path(), "1,ann,30\n2,bob,41\n3,cy,\n", "1,2,2019\n2,3,2020\n");
  auto r = Invoke({"-d", data.path().string(), "load", manifest.string(), "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["vertices"], 3);
  EXPECT_EQ(j["edges"], 2);
  EXPECT_EQ(j["vectors"], 0);

  auto q = Invoke({"-d", data.path().string(), "query", "--format", "tsv", "--no-timing", "-e",
                "MATCH (a:person)-[e:knows]->(b:person) RETURN a.name, b.name, e.since ORDER BY e.since"});
  ASSERT_EQ(q.code, kOk) << q.err;
  EXPECT_EQ(q.out, "a.name\tb.name\te.since\nann\tbob\t2019\nbob\tcy\t2020\n");
}

TEST(LoadTest, SampleCountsEqualLineCountsAndDegreesAreSkewed) {
  ScratchDir data("cli-data"), src("cli-src");
  auto manifest = Generate(src.path(), 2000, 12000, 0);
  const uint64_t persons = DataLines(src.path() / "person.csv");
  const uint64_t edges = DataLines(src.path() / "knows.csv");
  ASSERT_EQ(persons, 2000u);
  ASSERT_EQ(edges, 12000u);

  auto db = db::Database::Open(data.path());
  auto report = Load(*db, manifest, {.rejects_path = std::nullopt, .batch_rows = 1000});
  EXPECT_EQ(report.vertices, persons);
  EXPECT_EQ(report.edges, edges);
  EXPECT_EQ(report.rows, persons + edges);
  EXPECT_EQ(report.rejected, 0u);

  // Degree oracle from the raw file.
  std::map<std::string, uint64_t> indeg;
  std::ifstream f(src.path() / "knows.csv");
  std::string line;
  std::getline(f, line);
  while (std::getline(f, line)) ++indeg[SplitCsvLine(line, '|')[1]];
  uint64_t max_in = 0;
  for (const auto& [k, n] : indeg) max_in = std::max(max_in, n);
  EXPECT_EQ(report.in_degrees.max, max_in);
  EXPECT_EQ(report.in_degrees.vertices, persons);
  EXPECT_DOUBLE_EQ(report.in_degrees.mean, static_cast<double>(edges) / persons);
  EXPECT_GE(static_cast<double>(report.in_degrees.max), 20.0 * std::max(1.0, report.in_degrees.median));
}

TEST(LoadTest, BadRowsGoToRejectsAndRatioBoundsExit) {
  ScratchDir data("cli-data"), src("cli-src");
  // Rows 3 and 5 of person.csv and row 3 of knows.csv are bad.
  auto manifest = WriteToy(src.path(), "1,ann,30\nx,bob,41\n3,cy,\n4,dee,old\n",
                           "1,3,2019\n1,99,2020\n", /*max_reject_ratio=*/0.5);
  auto ok = Invoke({"-d", data.path().string(), "load", manifest.string(), "--json"});
  ASSERT_EQ(ok.code, kOk) << ok.err;
  auto j = Json::parse(ok.out);
  EXPECT_EQ(j["vertices"], 2);
  EXPECT_EQ(j["edges"], 1);
  EXPECT_EQ(j["rows"], 6);
  EXPECT_EQ(j["rejected"], 3);

  std::ifstream rejects(manifest.string() + ".rejects");
  std::vector<std::string> lines;
  for (std::string l; std::getline(rejects, l);) {
    lines.push_back(fs::path(l.substr(0, l.find('\t'))).filename().string());
  }
  EXPECT_EQ(lines, (std::vector<std::string>{"person.csv:3", "person.csv:5", "knows.csv:3"}));

  ScratchDir data2("cli-data");
  auto strict = Invoke({"-d", data2.path().string(), "load", manifest.string(), "--max-reject-ratio", "0.1",
                     "--rejects", (src.path() / "r.txt").string()});
  EXPECT_EQ(strict.code, kDataError);
  EXPECT_NE(strict.err.find("reject ratio"), std::string::npos) << strict.err;
  EXPECT_TRUE(fs::exists(src.path() / "r.txt"));
}

TEST(LoadTest, MissingFileIsADataError) {
  ScratchDir data("cli-data"), src("cli-src");
  auto manifest = WriteToy(src.path(), "1,a,1\n", "");
  fs::remove(src.path() / "knows.csv");
  auto r = Invoke({"-d", data.path().string(), "load", manifest.string()});
  EXPECT_EQ(r.code, kDataError);
}

TEST(LoadTest, VectorsRouteToTheBoundCollection) {
  ScratchDir data("cli-data"), src("cli-src");
  auto manifest = Generate(src.path(), 300, 900, 8);
  auto db = db::Database::Open(data.path());
  auto report = Load(*db, manifest);
  EXPECT_EQ(report.vectors, 300u);
  auto view = db->Read();
  ASSERT_TRUE(view.vectors().Has("person_emb"));
  EXPECT_EQ(view.vectors().Get("person_emb")->point_count(), 300u);
}

TEST(LoadTest, Deterministic) {
  ScratchDir src("cli-src"), a("cli-data"), b("cli-data");
  auto manifest = Generate(src.path(), 1000, 6000, 8);
  auto da = db::Database::Open(a.path());
  auto db = db::Database::Open(b.path());
  Load(*da, manifest, {.rejects_path = std::nullopt, .batch_rows = 10000});
  Load(*db, manifest, {.rejects_path = std::nullopt, .batch_rows = 97});
  EXPECT_EQ(da->StateDigest(), db->StateDigest());

  query::QueryEngine qa(*da), qb(*db);
  query::Params params;
  params["q"] = PropertyValue(FloatVector{0.5f, -1.0f, 0.25f, 2.0f, 0.0f, 1.0f, -0.5f, 0.75f});
  for (const auto& stmt : testing::ShellSuite()) {
    auto ra = qa.Run(stmt, params);
    auto rb = qb.Run(stmt, params);
    EXPECT_EQ(ra.columns, rb.columns) << stmt;
    EXPECT_TRUE(testing::SameRows(ra.rows, rb.rows)) << stmt;
  }
}

// ---- statements ----

class CliQueryTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    src_ = new ScratchDir("cli-src");
    data_ = new ScratchDir("cli-data");
    auto manifest = Generate(src_->path(), 1500, 9000, 8);
    auto r = Invoke({"-d", data_->path().string(), "init", "--schema", (src_->path() / "schema.json").string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    r = Invoke({"-d", data_->path().string(), "load", manifest.string()});
    ASSERT_EQ(r.code, kOk) << r.err;
  }
  static void TearDownTestSuite() {
    delete data_;
    delete src_;
  }
  static std::string dir() { return data_->path().string(); }

  static ScratchDir* src_;
  static ScratchDir* data_;
};
ScratchDir* CliQueryTest::src_ = nullptr;
ScratchDir* CliQueryTest::data_ = nullptr;

TEST_F(CliQueryTest, TraversalQueriesRunEndToEnd) {
  auto db = db::Database::Open(dir());
  query::QueryEngine engine(*db);
  for (const auto& q : TraversalQueries()) {
    auto expected = engine.Run(q);
    auto r = Invoke({"-d", dir(), "query", "--format", "json", "--no-timing", "-e", q});
    ASSERT_EQ(r.code, kOk) << q << "\n" << r.err;
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["rows"].size(), expected.rows.size()) << q;
    EXPECT_EQ(j["rows"].size(), 1000u) << q;
  }
  auto table = Invoke({"-d", dir(), "query", "-e", TraversalQueries()[1]});
  ASSERT_EQ(table.code, kOk);
  EXPECT_NE(table.out.find("(1000 rows, "), std::string::npos) << table.out.substr(0, 200);
  EXPECT_NE(table.out.find(" ms)"), std::string::npos);
}

TEST_F(CliQueryTest, ScriptFileRunsEveryStatement) {
  ScratchDir tmp("cli-script");
  WriteText(tmp.path() / "s.cypher",
            "// counts\nMATCH (n:person) RETURN count(*);\nMATCH ()-[e:knows]->() RETURN count(*);\n");
  auto r = Invoke({"-d", dir(), "query", "--format", "tsv", "--no-timing", "-f", (tmp.path() / "s.cypher").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out, "count(*)\n1500\ncount(*)\n9000\n");
}

TEST_F(CliQueryTest, ExplainShowsVertexVectorScan) {
  const std::string q = "MATCH (n:person) RETURN n, vector_distance(n.emb, $q) AS d ORDER BY d LIMIT 5";
  const std::string params = R"({"q": [1, 0, 0, 0, 0, 0, 0, 0]})";
  auto r = Invoke({"-d", dir(), "explain", "--params", params, "-e", q});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("VertexVectorScan(n:person, collection=person_emb"), std::string::npos) << r.out;
  auto plain = Invoke({"-d", dir(), "explain", "--no-optimize", "--params", params, "-e", q});
  ASSERT_EQ(plain.code, kOk) << plain.err;
  EXPECT_EQ(plain.out.find("VertexVectorScan"), std::string::npos) << plain.out;

  auto inline_explain = Invoke({"-d", dir(), "query", "--params", params, "-e", "EXPLAIN " + q});
  ASSERT_EQ(inline_explain.code, kOk) << inline_explain.err;
  EXPECT_NE(inline_explain.out.find("VertexVectorScan"), std::string::npos) << inline_explain.out;
}

TEST_F(CliQueryTest, ErrorsExitWithQueryError) {
  auto syntax = Invoke({"-d", dir(), "query", "-e", "MATCH (n RETURN n"});
  EXPECT_EQ(syntax.code, kQueryError);
  EXPECT_NE(syntax.err.find("SyntaxError"), std::string::npos) << syntax.err;
  EXPECT_EQ(Invoke({"-d", dir(), "query", "-e", "MATCH (n:nolabel) RETURN n"}).code, kQueryError);
  EXPECT_EQ(Invoke({"-d", dir(), "query", "-e", "MATCH (n:person) RETURN n.emb + 1"}).code, kQueryError);
  EXPECT_EQ(Invoke({"-d", dir(), "explain", "-e", "RETURN"}).code, kQueryError);
  // The statements before a failing one still ran.
  auto partial = Invoke({"-d", dir(), "query", "--format", "tsv", "--no-timing", "-e",
                      "MATCH (n:person) RETURN count(*); MATCH (n RETURN n"});
  EXPECT_EQ(partial.code, kQueryError);
  EXPECT_EQ(partial.out, "count(*)\n1500\n");
}

TEST_F(CliQueryTest, UsageErrors) {
  EXPECT_EQ(Invoke({}).code, kUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kUsage);
  EXPECT_EQ(Invoke({"-d", dir(), "query"}).code, kUsage);
  EXPECT_EQ(Invoke({"-d", dir(), "query", "-e", "RETURN 1", "--format", "xml"}).code, kUsage);
  EXPECT_EQ(Invoke({"-d", dir(), "query", "-e", "RETURN 1", "--params", "{not json"}).code, kUsage);
  EXPECT_EQ(Invoke({"-d", dir(), "bench", "latency"}).code, kUsage);
  EXPECT_EQ(Invoke({"-d", dir(), "query", "-e", " ; "}).code, kUsage);
  EXPECT_EQ(Invoke({"--help"}).code, kOk);
}

TEST_F(CliQueryTest, ShellRunsStatementsAndCommands) {
  auto r = Invoke({"-d", dir(), "shell", "--no-timing", "--format", "tsv"},
               ":param lo 20\n:param $hi 21\n:params\n"
               "MATCH (n:person)\n WHERE n.age >= $lo AND n.age <= $hi\n RETURN count(*) AS c;\n"
               ":format json\nMATCH (n:person) WHERE n.age < 0 RETURN n;\n:quit\nMATCH (n RETURN n;\n");
  ASSERT_EQ(r.code, kOk) << r.err;
  auto db = db::Database::Open(dir());
  auto expected = query::QueryEngine(*db).Run(
      "MATCH (n:person) WHERE n.age >= 20 AND n.age <= 21 RETURN count(*) AS c");
  const auto count = query::RenderDatum(expected.rows.at(0).at(0), expected.catalog);
  const std::string head = "$hi = 21\n$lo = 20\nc\n" + count + "\n";
  ASSERT_EQ(r.out.substr(0, head.size()), head) << r.out;
  auto j = Json::parse(r.out.substr(head.size()));
  EXPECT_EQ(j["columns"], Json::array({"n"}));
  EXPECT_TRUE(j["rows"].empty());
}

TEST_F(CliQueryTest, NonInteractiveShellFailsOnAnyError) {
  auto r = Invoke({"-d", dir(), "shell", "--no-timing"}, "MATCH (n RETURN n;\nMATCH (n:person) RETURN count(*);\n");
  EXPECT_EQ(r.code, kQueryError);
  EXPECT_NE(r.err.find("error: SyntaxError"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("1500"), std::string::npos) << r.out;
}

TEST_F(CliQueryTest, StatsReportCountsAndCollections) {
  auto r = Invoke({"-d", dir(), "stats", "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["vertices"], 1500);
  EXPECT_EQ(j["edges"], 9000);
  EXPECT_EQ(j["vertex_labels"]["person"], 1500);
  ASSERT_EQ(j["collections"].size(), 1u);
  EXPECT_EQ(j["collections"][0]["name"], "person_emb");
  EXPECT_EQ(j["collections"][0]["live_points"], 1500);
  EXPECT_EQ(j["collections"][0]["dimension"], 8);
  EXPECT_GT(j["in_degree"]["max"].get<uint64_t>(), j["out_degree"]["max"].get<uint64_t>());
  auto text = Invoke({"-d", dir(), "stats"});
  ASSERT_EQ(text.code, kOk);
  EXPECT_NE(text.out.find("collection   person_emb dim 8 cosine: 1500 live"), std::string::npos) << text.out;
}

TEST_F(CliQueryTest, BenchReportsAreJson) {
  ScratchDir out("cli-bench");
  auto fp_path = (out.path() / "fp.json").string();
  auto fp = Invoke({"-d", dir(), "bench", "footprint", "--json", fp_path});
  ASSERT_EQ(fp.code, kOk) << fp.err;
  auto f = Json::parse(ReadFile(fp_path));
  EXPECT_EQ(f["suite"], "footprint");
  std::map<std::string, int64_t> bytes;
  for (const auto& c : f["configs"]) bytes[c["name"].get<std::string>()] = c["topology_bytes"].get<int64_t>();
  ASSERT_EQ(bytes.size(), 5u);
  EXPECT_LE(bytes.at("all-Small"), bytes.at("factor-256"));
  EXPECT_LE(bytes.at("factor-256"), bytes.at("factor-128"));
  EXPECT_LE(bytes.at("factor-128"), bytes.at("factor-64"));
  EXPECT_LE(bytes.at("factor-64"), bytes.at("all-Large"));

  auto tr_path = (out.path() / "tr.json").string();
  auto tr = Invoke({"-d", dir(), "bench", "traversal", "--runs", "3", "--json", tr_path});
  ASSERT_EQ(tr.code, kOk) << tr.err;
  auto t = Json::parse(ReadFile(tr_path));
  ASSERT_EQ(t["configs"].size(), 2u);
  for (const auto& c : t["configs"]) {
    ASSERT_EQ(c["queries"].size(), TraversalQueries().size());
    for (const auto& q : c["queries"]) EXPECT_EQ(q["ms"].size(), 3u);
  }
  EXPECT_EQ(t["parity"].size(), TraversalQueries().size());
  EXPECT_NE(tr.out.find("all-Large (ms)"), std::string::npos);

  auto v_path = (out.path() / "v.json").string();
  auto v = Invoke({"-d", dir(), "bench", "vector", "--queries", "20", "--json", v_path});
  ASSERT_EQ(v.code, kOk) << v.err;
  auto vj = Json::parse(ReadFile(v_path));
  EXPECT_EQ(vj["collection"], "person_emb");
  EXPECT_EQ(vj["points"], 1500);
  EXPECT_GE(vj["recall"].get<double>(), 0.9);
}

TEST(CliTest, SyntheticVectorBenchNeedsNoDataDir) {
  auto r = Invoke({"bench", "vector", "--synthetic", "1000", "--dim", "16", "--queries", "20"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("recall@10 = "), std::string::npos) << r.out;
}

TEST(CliTest, WritebackCheckpointAndReopen) {
  ScratchDir src("cli-src"), data("cli-data");
  auto manifest = Generate(src.path(), 400, 2000, 0);
  const std::string d = data.path().string();
  ASSERT_EQ(Invoke({"-d", d, "init", "--schema", (src.path() / "schema.json").string()}).code, kOk);
  ASSERT_EQ(Invoke({"-d", d, "load", manifest.string()}).code, kOk);
  auto schema = Json::parse(ReadFile(src.path() / "schema.json"));
  schema["vertex_labels"][0]["fields"].push_back({{"name", "rank"}, {"type", "float"}});
  schema["vertex_labels"][0]["fields"].push_back({{"name", "comp"}, {"type", "int"}});
  WriteText(src.path() / "schema2.json", schema.dump());
  ASSERT_EQ(Invoke({"-d", d, "init", "--schema", (src.path() / "schema2.json").string()}).code, kOk);
  auto wb =Invoke({"-d", d, "writeback", "pagerank", "rank", "--tol", "1e-12"});
  ASSERT_EQ(wb.code, kOk) << wb.err;
  const std::string top = "MATCH (n:person) RETURN n, n.rank ORDER BY n.rank DESC, n LIMIT 10";
  auto before = Invoke({"-d", d, "query", "--format", "tsv", "--no-timing", "-e", top});
  ASSERT_EQ(before.code, kOk) << before.err;
  auto cp = Invoke({"-d", d, "checkpoint", "--prune"});
  ASSERT_EQ(cp.code, kOk) << cp.err;
  EXPECT_NE(cp.out.find("checkpoint at lsn"), std::string::npos);
  auto after = Invoke({"-d", d, "query", "--format", "tsv", "--no-timing", "-e", top});
  EXPECT_EQ(before.out, after.out);
  EXPECT_EQ(std::count(after.out.begin(), after.out.end(), '\n'), 11);

  EXPECT_EQ(Invoke({"-d", d, "writeback", "wcc", "firstName"}).code, kQueryError);  // text field
  EXPECT_EQ(Invoke({"-d", d, "writeback", "wcc", "comp"}).code, kOk);
}

TEST(CliTest, DataDirFromEnvironment) {
  ScratchDir data("cli-data");
  ::setenv("ARCFORGE_DATA", data.path().c_str(), 1);
  auto r = Invoke({"stats", "--json"});
  ::unsetenv("ARCFORGE_DATA");
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(Json::parse(r.out)["dir"], data.path().string());
  EXPECT_EQ(Invoke({"stats"}).code, kUsage);
}

}  // namespace
}  // namespace arcforge::cli
