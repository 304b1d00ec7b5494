#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "grn/cli.hpp"
#include "support.hpp"

using namespace grn;
using grn::cli::Json;
using grn::testing::model_path;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string toggle() { return model_path("toggle.grn"); }

struct CorpusEntry {
  std::string file;
  int exit;
  std::string code;
};

std::vector<CorpusEntry> corpus() {
  std::istringstream in(grn::testing::read_text(std::string(GRN_CORPUS_DIR) + "/manifest.txt"));
  std::vector<CorpusEntry> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    CorpusEntry e;
    fields >> e.file >> e.exit >> e.code;
    out.push_back(e);
  }
  return out;
}

}  // namespace

TEST(Cli, ValidateToggle) {
  const auto r = run({"validate", toggle()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0 errors, 0 warnings\n");
}

TEST(Cli, ValidateReportsWarnings) {
  const auto r = run({"validate", model_path("cascade.grn")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("warning W002"), std::string::npos);
}

TEST(Cli, MissingFile) {
  EXPECT_EQ(run({"validate", "/nonexistent/model.grn"}).code, 2);
  EXPECT_EQ(run({"check", "/nonexistent/model.grn", "count reachable"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check", toggle()}).code, 2);
  EXPECT_EQ(run({"check", toggle(), "count reachable", "--engine", "quantum"}).code, 2);
  EXPECT_EQ(run({"compile", toggle(), "--format", "png"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MalformedCorpus) {
  const auto entries = corpus();
  ASSERT_FALSE(entries.empty());
  for (const auto& e : entries) {
    const std::string path = std::string(GRN_CORPUS_DIR) + "/" + e.file;
    const auto r = run({"validate", path, "--json"});
    EXPECT_EQ(r.code, e.exit) << e.file;
    const auto j = Json::parse(r.out);
    ASSERT_FALSE(j["diagnostics"].empty()) << e.file;
    EXPECT_EQ(j["diagnostics"][0]["code"], e.code) << e.file;
    const std::string text = grn::testing::read_text(path);
    for (const auto& d : j["diagnostics"]) {
      const SourceSpan span{d["span"]["line"], d["span"]["column"], d["span"]["length"]};
      EXPECT_TRUE(span_in_bounds(span, text)) << e.file;
    }
    EXPECT_EQ(run({"check", path, "count reachable"}).code, e.exit) << e.file;
  }
}

TEST(Cli, CheckToggle) {
  auto r = run({"check", toggle(), "check EF (a = 1 and b = 0)", "--witness"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("witness (1 step):\n  a=0 b=0\n  a=1 b=0\n"), std::string::npos);

  r = run({"check", toggle(), "check AG not deadlock", "--witness"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("counterexample (1 step):\n  a=0 b=0\n"), std::string::npos);

  r = run({"check", toggle(), "count reachable"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3\n");
}

TEST(Cli, QueryErrors) {
  EXPECT_EQ(run({"check", toggle(), "check EF (a = "}).code, 2);
  EXPECT_EQ(run({"check", toggle(), "check EF z = 1"}).code, 3);
  EXPECT_EQ(run({"check", toggle(), "check a = 4"}).code, 3);
  EXPECT_EQ(run({"stable", toggle(), "--where", "a ="}).code, 2);
  EXPECT_EQ(run({"stable", toggle(), "--where", "q = 1"}).code, 3);
}

TEST(Cli, QueryFile) {
  const auto path = std::filesystem::temp_directory_path() / "grn_cli_query.txt";
  {
    std::ofstream out(path);
    out << "check\n  EF (a = 1 and b = 0)\n";
  }
  EXPECT_EQ(run({"check", toggle(), "--query-file", path.string()}).code, 0);
  std::filesystem::remove(path);
}

TEST(Cli, Stable) {
  EXPECT_EQ(run({"stable", toggle()}).out, "2 stable states: a=0 b=1; a=1 b=0\n");
  EXPECT_EQ(run({"stable", toggle(), "--where", "a = 1"}).out, "1 stable state: a=1 b=0\n");
  EXPECT_EQ(run({"stable", model_path("repressilator.grn")}).out, "0 stable states\n");
  EXPECT_EQ(run({"check", toggle(), "stable where b = 1"}).out, "1 stable state: a=0 b=1\n");
}

TEST(Cli, Stats) {
  const auto r = run({"stats", model_path("m40.grn")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("reachable states: 1099511627776\n"), std::string::npos);
  EXPECT_NE(r.out.find("genes: 40\n"), std::string::npos);
  EXPECT_NE(r.out.find("places: 80\n"), std::string::npos);
  EXPECT_NE(r.out.find("peak MDD nodes: "), std::string::npos);
  EXPECT_NE(r.out.find("fixpoint rounds: "), std::string::npos);
}

TEST(Cli, Engines) {
  for (const char* engine : {"symbolic", "explicit", "both"}) {
    EXPECT_EQ(run({"check", toggle(), "check EF a = 1", "--engine", engine}).code, 0) << engine;
    EXPECT_EQ(run({"check", toggle(), "stable", "--engine", engine}).out,
              "2 stable states: a=0 b=1; a=1 b=0\n");
  }
  const auto r = run({"check", model_path("m40.grn"), "count reachable", "--engine", "explicit"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("cap"), std::string::npos);
  EXPECT_EQ(run({"check", toggle(), "count reachable", "--engine", "explicit", "--max-states", "2"}).code, 4);
}

TEST(Cli, ResourceLimits) {
  const auto r = run({"check", model_path("m40.grn"), "count reachable", "--max-nodes", "100"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("peak MDD nodes"), std::string::npos);
  EXPECT_EQ(run({"check", toggle(), "count reachable", "--timeout", "-1"}).code, 2);
}

TEST(Cli, Orders) {
  const auto a = run({"check", model_path("cascade.grn"), "check AF c = 1", "--order", "decl", "--json"});
  const auto b = run({"check", model_path("cascade.grn"), "check AF c = 1", "--order", "reverse", "--json"});
  EXPECT_EQ(a.code, b.code);
  const auto ja = Json::parse(a.out);
  const auto jb = Json::parse(b.out);
  EXPECT_EQ(ja["holds"], jb["holds"]);
  EXPECT_EQ(ja["reachable_count"], jb["reachable_count"]);
  EXPECT_EQ(ja["satisfying_reachable_count"], jb["satisfying_reachable_count"]);
}

TEST(Cli, Compile) {
  const auto json = run({"compile", toggle(), "--format", "json"});
  EXPECT_EQ(json.code, 0);
  const auto j = Json::parse(json.out);
  EXPECT_EQ(j["places"].size(), 4u);
  EXPECT_EQ(j["transitions"].size(), 4u);
  EXPECT_EQ(json.out, run({"compile", toggle(), "--format", "json"}).out);

  const auto dot = run({"compile", toggle(), "--format", "dot"});
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
  EXPECT_EQ(dot.out, run({"compile", toggle(), "--format", "dot"}).out);

  const auto path = std::filesystem::temp_directory_path() / "grn_cli_toggle.dot";
  EXPECT_EQ(run({"compile", toggle(), "--format", "dot", "-o", path.string()}).code, 0);
  EXPECT_EQ(grn::testing::read_text(path.string()), dot.out);
  std::filesystem::remove(path);

  EXPECT_EQ(run({"compile", std::string(GRN_CORPUS_DIR) + "/missing_rule.grn", "--format", "dot"}).code, 3);
}

TEST(Cli, JsonRoundTripAndTextAgreement) {
  const std::vector<std::vector<std::string>> runs{
      {"check", toggle(), "check EF (a = 1 and b = 0)", "--witness"},
      {"check", toggle(), "check AG not deadlock", "--witness"},
      {"check", toggle(), "count reachable"},
      {"stable", toggle()},
      {"stats", model_path("m20.grn")},
      {"validate", model_path("cascade.grn")},
      {"check", toggle(), "check EF z = 1"},
  };
  for (auto args : runs) {
    const auto text = run(args);
    args.push_back("--json");
    const auto json = run(args);
    EXPECT_EQ(text.code, json.code);
    const auto j = Json::parse(json.out);
    EXPECT_EQ(cli::to_json(cli::report_from_json(j)), j);

    // the verdict and every count in the JSON appear verbatim in the text
    if (j.contains("holds")) {
      EXPECT_NE(text.out.find(j["holds"].get<bool>() ? ": holds" : ": does not hold"), std::string::npos);
    }
    for (const char* key : {"reachable_count", "satisfying_reachable_count", "stable_count"}) {
      if (j.contains(key)) {
        EXPECT_NE(text.out.find(j[key].get<std::string>()), std::string::npos) << key;
      }
    }
    if (j.contains("evidence")) {
      const auto steps = std::to_string(j["evidence"].size() - 1) + " step";
      EXPECT_NE(text.out.find(steps), std::string::npos);
    }
    const std::string all = text.out + text.err;
    std::size_t lines = 0;
    for (const char* tag : {": error E", ": warning W"}) {
      for (auto pos = all.find(tag); pos != std::string::npos; pos = all.find(tag, pos + 1)) ++lines;
    }
    EXPECT_EQ(lines, j["diagnostics"].size());
  }
}

TEST(Cli, ReportRoundTrip) {
  cli::Report r;
  r.command = "check";
  r.model = "m.grn";
  r.genes = {"a", "b"};
  r.diagnostics.push_back(make_warning("W001", "edge a to b is never read", {3, 1, 10}));
  r.query = "check EF a = 1";
  r.holds = true;
  r.reachable_count = cli::BigInt(1) << 90;
  r.satisfying_count = 7;
  r.evidence = std::vector<State>{State({0, 0}), State({1, 0})};
  r.stats = cli::EngineStats{10, 2, 30, 4, 0};
  r.wall_ms = 1.5;
  EXPECT_EQ(cli::report_from_json(Json::parse(cli::to_json(r).dump())), r);
}
