#include <pbwforge/cli.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace pbwforge;
using cli::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string problem(const std::string& name) { return read_file(std::string(PBWFORGE_SOURCE_DIR) + "/problems/" + name); }

cli::Outcome run(const std::string& command, const json& j) { return cli::run_text(command, j.dump()); }

json ym_problem() {
  return json::parse(R"({"schema_version": 1, "algebra": {"family": "yang-mills", "s": 2}})");
}

}  // namespace

TEST(Cli, ZeroCurrentPasses) {
  const cli::Outcome o = cli::run_text("check-current", problem("ym_zero_current.json"));
  EXPECT_EQ(o.exit_code, cli::exit_pass);
  EXPECT_EQ(o.report["passed"], true);
  EXPECT_EQ(o.report["schema_version"], 1);
  EXPECT_EQ(o.report["tasks"][0]["verdict"], "regular");
}

TEST(Cli, ViolatedSideConditionIsReportedWithAWitness) {
  const cli::Outcome o = cli::run_text("check-current", problem("ym_s1_violated.json"));
  EXPECT_EQ(o.exit_code, cli::exit_fail);
  const json& t = o.report["tasks"][0];
  EXPECT_EQ(t["pbw"]["failed_condition"], "J3");
  EXPECT_FALSE(t["pbw"]["witness"].is_null());
  EXPECT_EQ(t["side_conditions"]["s1_b_zero"], false);
  EXPECT_EQ(t["conservation"]["agrees_with_pbw"], true);
  const cli::Outcome oracle = cli::run_text("oracle", problem("ym_s1_violated.json"));
  EXPECT_EQ(oracle.exit_code, cli::exit_fail);
  EXPECT_EQ(oracle.report["tasks"][0]["verdict"], "FAIL");
}

TEST(Cli, HilbertTableAndRecurrence) {
  const cli::Outcome o = cli::run_text("hilbert", problem("ym_hilbert.json"));
  EXPECT_EQ(o.exit_code, cli::exit_pass);
  EXPECT_EQ(o.report["tasks"][0]["dims"], json::parse("[1, 3, 9, 24, 64, 168]"));
  EXPECT_NE(o.tsv.find("# hilbert\nn\tdim\n0\t1\n1\t3\n"), std::string::npos);
  EXPECT_NE(o.tsv.find("5\t168\n"), std::string::npos);
}

TEST(Cli, ClassifyReportsDerivedStage1Dimension) {
  json p = json::parse(R"({"schema_version": 1, "seed": 3,
    "algebra": {"family": "yang-mills", "s": 1}, "tasks": [{"task": "classify", "samples": 2}]})");
  const cli::Outcome o = run("classify", p);
  EXPECT_EQ(o.exit_code, cli::exit_pass);
  const json& t = o.report["tasks"][0];
  EXPECT_EQ(t["stage1"]["solution_dim"], 6);
  EXPECT_EQ(t["stage1"]["dimension_source"], "derived by rank");
  EXPECT_EQ(t["family"]["equal"], true);
  EXPECT_EQ(t["samples"].size(), 2u);
  // Sampling without a seed is refused.
  p.erase("seed");
  EXPECT_EQ(run("classify", p).exit_code, cli::exit_invalid);
}

TEST(Cli, ClassifyWithACurrentShowsItsStages) {
  const cli::Outcome o = cli::run_text("classify", problem("ym_regular.json"));
  EXPECT_EQ(o.exit_code, cli::exit_pass);
  const json& st = o.report["tasks"][0]["current_stages"];
  ASSERT_TRUE(st.is_array());
  EXPECT_EQ(st.size(), 3u);
  for (const auto& s : st) EXPECT_EQ(s["feasible"], true);
}

TEST(Cli, SuperIdentitiesIncludeCentrality) {
  const cli::Outcome o = cli::run_text("identities", problem("sym_identities.json"));
  EXPECT_EQ(o.exit_code, cli::exit_pass);
  const json& t = o.report["tasks"][0];
  EXPECT_EQ(t["overlap_dim"], 1);
  EXPECT_EQ(t["centrality"]["commutators_span_relations"], true);
  EXPECT_EQ(t["centrality"]["degrees"].size(), 2u);
}

TEST(Cli, DemoLie) {
  EXPECT_EQ(cli::demo_lie("so3", 4, std::nullopt).exit_code, cli::exit_pass);
  const cli::Outcome broken = cli::demo_lie("broken", 4, std::nullopt);
  EXPECT_EQ(broken.exit_code, cli::exit_fail);
  EXPECT_EQ(broken.report["tasks"][0]["certificates_agree"], true);
  EXPECT_EQ(broken.report["tasks"][0]["jacobi_holds"], false);
  EXPECT_THROW(cli::demo_lie("random", 4, std::nullopt), input_error);
  EXPECT_THROW(cli::demo_lie("sl2", 4, std::nullopt), input_error);
}

TEST(Cli, ReportsAreByteStable) {
  for (const char* name : {"ym_regular.json", "sym_regular.json", "exterior_cubic.json"}) {
    const std::string text = problem(name);
    const cli::Outcome a = cli::run_text("run", text);
    const cli::Outcome b = cli::run_text("run", text);
    EXPECT_EQ(a.report.dump(2), b.report.dump(2)) << name;
    EXPECT_EQ(a.tsv, b.tsv) << name;
    EXPECT_EQ(a.exit_code, cli::exit_pass) << name << "\n" << a.summary;
  }
}

TEST(Cli, ScalarsAreExactRationals) {
  const cli::Outcome o = cli::run_text("run", problem("ym_regular.json"));
  EXPECT_EQ(o.report["algebra"]["metric"]["lower"][2][2], "1/3");
}

TEST(Schema, RejectsMalformedInput) {
  const auto expect_invalid = [](const json& j, const char* why) {
    EXPECT_EQ(run("check-current", j).exit_code, cli::exit_invalid) << why;
  };
  json p = ym_problem();
  p["colour"] = "red";
  expect_invalid(p, "unknown top-level key");

  p = ym_problem();
  p["schema_version"] = 2;
  expect_invalid(p, "schema version");

  p = ym_problem();
  p.erase("schema_version");
  expect_invalid(p, "missing schema version");

  p = ym_problem();
  p["current"] = json::parse(R"({"parameters": {"b": [0.5, 0, 0]}})");
  expect_invalid(p, "floating point scalar");

  p = ym_problem();
  p["current"] = json::parse(R"({"parameters": {"b": ["1", "0"]}})");
  expect_invalid(p, "wrong length");

  p = ym_problem();
  p["current"] = json::parse(R"({"parameters": {"b": ["1", "0", "0"]}, "raw": {}})");
  expect_invalid(p, "two current forms");

  p = ym_problem();
  p["algebra"]["metric"] = json::parse(R"([["1", "2", "0"], ["2", "4", "0"], ["0", "0", "1"]])");
  expect_invalid(p, "degenerate metric");

  p = ym_problem();
  p["algebra"]["family"] = "lie";
  expect_invalid(p, "unknown family");

  p = ym_problem();
  p["tasks"] = json::parse(R"([{"task": "oracle", "n_max": 5, "cutoff": 3}])");
  expect_invalid(p, "cutoff below n_max");

  p = ym_problem();
  p["tasks"] = json::parse(R"([{"task": "check", "n_max": 5}])");
  expect_invalid(p, "option not allowed for the task");

  p = ym_problem();
  p["current"] = json::parse(R"({"parameters": {"s2": [{"index": [0, 1], "value": "1/0"}]}})");
  expect_invalid(p, "zero denominator");

  EXPECT_EQ(cli::run_text("check-current", "{\"schema_version\": 1,").exit_code, cli::exit_invalid);
}

TEST(Schema, AcceptsEquivalentEncodings) {
  // Dense and sparse encodings of the same current give the same report.
  json dense = ym_problem();
  dense["current"] = json::parse(R"({"parameters": {"b": ["0", "0", "1"], "s2": ["1", "0", "0", "0", "0", "0", "0", "0", "0"]}})");
  json sparse = ym_problem();
  sparse["current"] = json::parse(R"({"parameters": {"b": [0, 0, 1], "s2": [{"index": [0, 0], "value": 1}]}})");
  const cli::Outcome a = run("check-current", dense);
  const cli::Outcome b = run("check-current", sparse);
  EXPECT_EQ(a.exit_code, cli::exit_pass);
  EXPECT_EQ(a.report.dump(), b.report.dump());
}

TEST(Schema, ResourceGuardMapsToItsExitCode) {
  json p = json::parse(R"({"schema_version": 1, "algebra": {"family": "yang-mills", "s": 10}})");
  EXPECT_EQ(run("check-current", p).exit_code, cli::exit_resource);
}
