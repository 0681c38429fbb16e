#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "marty/quadrature.hpp"
#include "marty/rational.hpp"
#include "marty/theorem_harness.hpp"

namespace marty {

// JSON scenario files: one scenario object, or {"scenarios": [...]} for a
// batch. Complex numbers are [re, im] pairs; a bare number is a real value.

enum class Command {
  fft_check,
  counting_check,
  theorem2a,
  theorem2b,
  theorem1_scan,
  sharpness,
  estimates,
  harnack,
  expansion_dump,
};

const char* to_string(Command command);

/// Malformed configuration; `field` is a dotted path such as "params.k".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : "field '" + field + "': " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Expectation { pass, pole_error, unbounded };

struct ScenarioConfig {
  Command command = Command::fft_check;
  std::string name;
  /// Function given explicitly, if any.
  std::optional<RationalFunction> function;
  /// Size of the seeded corpus to run instead of a single function (0: none).
  int corpus_count = 0;
  std::optional<FamilySpec> family;

  double r = 0.5;
  double R = 0.8;
  Disk disk{};
  cplx base{};

  int k = 1;
  int m = 1;
  int p = 1;
  double alpha = 2.0;
  std::string example = "power_pole";
  std::vector<int> n_range;
  std::vector<double> radii;
  /// Rescale the function to this fraction of x0 before the estimate chain.
  std::optional<double> rescale;

  QuadratureSpec quadrature{};
  int grid = 24;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  Expectation expect = Expectation::pass;
  std::filesystem::path output_dir = ".";

  /// The "params" object echoed into the summary.
  nlohmann::ordered_json params_echo;
};

/// Parses one scenario object. Throws ConfigError.
ScenarioConfig parse_scenario(const nlohmann::ordered_json& j);

/// Reads a scenario or batch file. Throws ConfigError with the line number
/// for syntax errors.
std::vector<ScenarioConfig> load_scenarios(const std::filesystem::path& path);

/// Command-line values that take precedence over the file.
struct Overrides {
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> quad_nodes;
  std::optional<double> tol;
  std::optional<int> grid;
};

void apply_overrides(ScenarioConfig& config, const Overrides& overrides);

struct ResultRecord {
  long long index = 0;
  std::string quantity;
  double value = 0.0;
  std::optional<double> bound;
  std::optional<double> margin;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitContractFailure = 1;
inline constexpr int kExitInputError = 2;

struct ScenarioOutcome {
  int exit_code = kExitPass;
  std::string verdict;
  std::vector<ResultRecord> records;
  nlohmann::ordered_json residuals = nlohmann::ordered_json::object();
  std::vector<std::string> diagnostics;
  double runtime_ms = 0.0;
};

/// Runs the check the config names. Never throws for module errors: they
/// become exit codes and diagnostics.
ScenarioOutcome run_scenario(const ScenarioConfig& config);

/// CSV header line, without the newline.
inline constexpr const char* kCsvHeader = "index,quantity,value,bound,margin";

std::string records_to_csv(const std::vector<ResultRecord>& records);

/// Summary with keys command, params, verdict, residuals, runtime_ms.
nlohmann::ordered_json summary_json(const ScenarioConfig& config, const ScenarioOutcome& outcome);

/// Writes <dir>/<name>.csv and <dir>/<name>.json, each through a temporary
/// file and a rename. Throws Error when the directory is not writable.
void emit_results(const ScenarioConfig& config, const ScenarioOutcome& outcome);

/// Runs every scenario concurrently, emits each, and returns the worst exit
/// code (2 over 1 over 0). Diagnostics go to `log` in scenario order.
int run_batch(const std::vector<ScenarioConfig>& configs, std::ostream& log);

}  // namespace marty
