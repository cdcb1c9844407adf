#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "calabi/cli.hpp"
#include "calabi/report.hpp"

using namespace calabi;

TEST_SUITE_BEGIN("report");

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AnalysisReport sample_report() {
  AnalysisReport r;
  r.function_name = "thm13a";
  r.source = "-0.25*ln(x1 - x2^2/2)";
  r.n = 2;
  r.point = {1.0, 0.0};
  r.detD = 1.0 / 16.0;
  r.g_eig_min = 0.25;
  r.g_eig_max = 0.25;
  r.Tnorm2 = 2.25;
  r.pickJ = 3.5;
  r.scalar_contracted = -2.0;
  r.scalar_JT = -2.0;
  r.sectional_samples = {-1.0};
  r.theta = 2.0;
  r.spectrum = {2.0, 1.0};
  r.maximizer = {2.0, 0.0};
  r.seed = 42;
  return r;
}

}  // namespace

TEST_CASE("report serialization carries the stated fields") {
  const std::string text = to_json(sample_report()).dump(2);
  CHECK(text.find("\"pickJ\": 3.5") != std::string::npos);
  CHECK(text.find("\"Tnorm2\": 2.25") != std::string::npos);
  CHECK(text.find("\"tool_version\"") != std::string::npos);
}

TEST_CASE("empty pde section serializes as an empty list") {
  AnalysisReport r = sample_report();
  r.pde.clear();
  const std::string text = to_json(r).dump(0);
  CHECK(text.find("\"pde\":[]") != std::string::npos);
}

TEST_CASE("serialization is deterministic and lossless") {
  AnalysisReport r = sample_report();
  r.detD = 1.0 / 3.0;
  r.scalar_JT = -1.9999999999999998;
  const std::string a = to_json(r).dump(2);
  const std::string b = to_json(r).dump(2);
  CHECK(a == b);

  const nlohmann::json parsed = nlohmann::json::parse(a);
  CHECK(parsed["metric"]["detD"].get<double>() == 1.0 / 3.0);
  CHECK(parsed["invariants"]["scalar_JT"].get<double>() == -1.9999999999999998);
  CHECK(parsed["invariants"]["pickJ"].get<double>() == 3.5);
}

TEST_CASE("numbers print with 17 significant digits") {
  JsonValue v = JsonValue::object();
  v.set("third", 1.0 / 3.0);
  CHECK(v.dump(0) == "{\"third\":0.33333333333333331}");
}

TEST_CASE("non-finite numbers become null") {
  JsonValue v = JsonValue::object();
  v.set("bad", std::numeric_limits<double>::infinity());
  CHECK(v.dump(0) == "{\"bad\":null}");
}

TEST_CASE("csv writer quotes only when needed") {
  std::ostringstream os;
  write_csv(os, {"t", "note"}, {{"1.5", "plain"}, {"2.5", "with, comma"}, {"3.5", "say \"hi\""}});
  CHECK(os.str() == "t,note\n1.5,plain\n2.5,\"with, comma\"\n3.5,\"say \"\"hi\"\"\"\n");
}

TEST_CASE("analyze output validates against the shipped schema") {
  std::ostringstream out, err;
  const int code = cli::run({"analyze", "--catalog", "thm13a", "--dim", "2", "--point", "1,0"}, out, err);
  REQUIRE(code == 0);
  const std::string schema = read_file(std::string(CALABI_SOURCE_DIR) + "/schema/analysis_report.schema.json");
  CHECK(schema_validate(out.str(), schema) == "");
}

TEST_CASE("schema validation catches shape violations") {
  const std::string schema = read_file(std::string(CALABI_SOURCE_DIR) + "/schema/analysis_report.schema.json");
  CHECK(schema_validate("{\"function\": {}}", schema) != "");
  CHECK(schema_validate("not json", schema) != "");
}

TEST_SUITE_END();
