#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "marty/scenario.hpp"

using marty::ConfigError;
using marty::ScenarioConfig;
using json = nlohmann::ordered_json;

namespace {

std::string field_of(const json& j) {
  try {
    marty::parse_scenario(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("marty_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("fft-check on f = 2") {
  const auto c = marty::parse_scenario(json::parse(R"({"command": "fft-check", "name": "two",
      "function": {"num": [2]}, "geometry": {"r": 0.5, "base": [0.1, 0.1]}})"));
  const auto o = marty::run_scenario(c);
  CHECK(o.exit_code == marty::kExitPass);
  REQUIRE(o.records.size() == 1);
  CHECK(std::abs(o.records[0].value) < 1e-12);
}

TEST_CASE("field paths in config errors") {
  CHECK(field_of(json::parse(R"({"command": "fft-check", "function": {"num": [1]}, "bogus": 1})")) == "bogus");
  CHECK(field_of(json::parse(R"({"command": "nope"})")) == "command");
  CHECK(field_of(json::parse(R"({"function": {"num": [1]}})")) == "command");
  CHECK(field_of(json::parse(R"({"command": "theorem2b", "family": {"kind": "scaled_pole", "p": 2, "indices": [1]},
      "params": {"k": 0}})")) == "params.k");
  CHECK(field_of(json::parse(R"({"command": "fft-check", "function": {"zeros": [{"at": [0.1, 0], "mult": 0}]}})")) ==
        "function.zeros[0].mult");
  CHECK(field_of(json::parse(R"({"command": "fft-check", "function": {"num": [1], "lead": 2}})")) == "function");
  CHECK(field_of(json::parse(R"({"command": "sharpness", "params": {"example": "power_pole", "k": 1, "alpha": 2, "p": 1}})")) ==
        "params");
  CHECK(field_of(json::parse(R"({"command": "counting-check", "corpus": {"count": 2}, "geometry": {"r": 0.9, "R": 0.5}})")) ==
        "geometry");
  CHECK(field_of(json::parse(R"({"command": "theorem2a"})")) == "family");
  CHECK(field_of(json::parse(R"({"command": "fft-check", "function": {"num": [1]}, "name": "a/b"})")) == "name");
}

TEST_CASE("syntax errors carry a line number") {
  const auto dir = scratch_dir("syntax");
  const auto path = dir / "bad.json";
  std::ofstream(path) << "{\n  \"command\": \"fft-check\",\n  \"function\": {\"num\": [1]\n}\n";
  try {
    marty::load_scenarios(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
  CHECK_THROWS_AS(marty::load_scenarios(dir / "missing.json"), ConfigError);
}

TEST_CASE("batch files name their scenarios") {
  const auto dir = scratch_dir("batch");
  const auto path = dir / "batch.json";
  std::ofstream(path) << R"({"scenarios": [{"command": "expansion-dump", "params": {"k": 3}},
                                           {"command": "expansion-dump", "name": "four", "params": {"k": 4}}]})";
  const auto configs = marty::load_scenarios(path);
  REQUIRE(configs.size() == 2);
  CHECK(configs[0].name == "expansion-dump_0");
  CHECK(configs[1].name == "four");
}

TEST_CASE("overrides take precedence") {
  auto c = marty::parse_scenario(json::parse(R"({"command": "fft-check", "function": {"num": [1]}, "seed": 3, "grid": 10})"));
  marty::Overrides o;
  o.seed = 9;
  o.grid = 40;
  o.quad_nodes = 32;
  o.tol = 1e-9;
  o.out = "elsewhere";
  marty::apply_overrides(c, o);
  CHECK(c.seed == 9);
  CHECK(c.grid == 40);
  CHECK(c.quadrature.initial_nodes == 32);
  CHECK(c.quadrature.tolerance == 1e-9);
  CHECK(c.output_dir == std::filesystem::path("elsewhere"));
}

TEST_CASE("CSV output") {
  CHECK(marty::records_to_csv({}) == std::string(marty::kCsvHeader) + "\n");
  const auto c = marty::parse_scenario(json::parse(R"({"command": "theorem2b", "name": "eight",
      "family": {"kind": "scaled_pole", "p": 2, "indices": [10, 100, 1000, 10000, 100000, 1000000, 10000000, 100000000]},
      "params": {"k": 1, "p": 1}})"));
  const auto o = marty::run_scenario(c);
  CHECK(o.exit_code == marty::kExitPass);
  CHECK(o.verdict == "converges_to_zero");
  const std::string csv = marty::records_to_csv(o.records);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  CHECK(csv.rfind(std::string(marty::kCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("pole errors pass only when expected") {
  const char* text = R"({"command": "theorem2b", "family": {"kind": "scaled_pole", "p": 3, "indices": [1000, 10000]},
      "params": {"k": 1, "p": 3}, "expect": "%s"})";
  char buf[512];
  std::snprintf(buf, sizeof buf, text, "pole_error");
  CHECK(marty::run_scenario(marty::parse_scenario(json::parse(buf))).exit_code == marty::kExitPass);
  std::snprintf(buf, sizeof buf, text, "pass");
  const auto o = marty::run_scenario(marty::parse_scenario(json::parse(buf)));
  CHECK(o.exit_code == marty::kExitContractFailure);
  CHECK(o.verdict == "pole_error");
}

TEST_CASE("sharpness scenario records the fitted slope") {
  const auto c = marty::parse_scenario(
      json::parse(R"({"command": "sharpness", "params": {"example": "power_pole", "k": 2, "alpha": 1.5, "p": 3}})"));
  const auto o = marty::run_scenario(c);
  CHECK(o.exit_code == marty::kExitPass);
  CHECK(o.residuals["fitted_slope"].get<double>() == doctest::Approx(-0.5).epsilon(0.02));
}

TEST_CASE("module preconditions become input errors") {
  const auto c = marty::parse_scenario(json::parse(R"({"command": "estimates", "function": {"lead": 1, "zeros": [{"at": 0, "mult": 2}]},
      "geometry": {"r": 0.3, "R": 0.7}, "params": {"k": 1, "m": 2}})"));
  CHECK(marty::run_scenario(c).exit_code == marty::kExitInputError);
}

TEST_CASE("outputs are deterministic and match the golden summary") {
  const auto dir = scratch_dir("golden");
  auto configs = marty::load_scenarios(std::filesystem::path(MARTY_GOLDEN_DIR) / "fixed_corpus_scenario.json");
  REQUIRE(configs.size() == 1);
  configs[0].output_dir = dir;
  std::ostringstream log;
  REQUIRE(marty::run_batch(configs, log) == marty::kExitPass);
  const std::string csv_first = read_file(dir / "fixed_corpus.csv");
  auto summary = json::parse(read_file(dir / "fixed_corpus.json"));
  CHECK(summary.contains("runtime_ms"));
  summary.erase("runtime_ms");
  CHECK(summary.dump(2) + "\n" == read_file(std::filesystem::path(MARTY_GOLDEN_DIR) / "fixed_corpus_summary.json"));

  REQUIRE(marty::run_batch(configs, log) == marty::kExitPass);
  CHECK(read_file(dir / "fixed_corpus.csv") == csv_first);
  for (const auto& entry : std::filesystem::directory_iterator(dir)) CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("unwritable output directory is an input error") {
  auto c = marty::parse_scenario(json::parse(R"({"command": "expansion-dump", "name": "x", "params": {"k": 2}})"));
  const auto dir = scratch_dir("unwritable");
  std::ofstream(dir / "file") << "x";
  c.output_dir = dir / "file" / "sub";
  std::ostringstream log;
  CHECK(marty::run_batch({c}, log) == marty::kExitInputError);
}
