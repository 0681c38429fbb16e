// Scenario runner: loads a JSON scenario (or batch) file, runs the checks and
// writes <name>.csv and <name>.json per scenario.
//
// Exit status: 0 when every contract holds, 1 on a contract failure, 2 on
// malformed input or an unwritable output path.

#include <iostream>

#include <CLI11.hpp>

#include "marty/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Run Marty-quotient and Nevanlinna scenario checks"};
  std::string config_path;
  marty::Overrides overrides;
  std::string out_dir;
  std::uint64_t seed = 0;
  int quad_nodes = 0;
  double tol = 0.0;
  int grid = 0;

  app.add_option("--config", config_path, "Scenario or batch JSON file")->required()->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("--out", out_dir, "Output directory (overrides the file)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for corpus generation");
  auto* nodes_opt = app.add_option("--quad-nodes", quad_nodes, "Initial quadrature nodes")->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  auto* grid_opt = app.add_option("--grid", grid, "Grid resolution")->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : marty::kExitInputError;
  }

  if (*out_opt) overrides.out = out_dir;
  if (*seed_opt) overrides.seed = seed;
  if (*nodes_opt) overrides.quad_nodes = quad_nodes;
  if (*tol_opt) overrides.tol = tol;
  if (*grid_opt) overrides.grid = grid;

  std::vector<marty::ScenarioConfig> configs;
  try {
    configs = marty::load_scenarios(config_path);
    for (auto& c : configs) marty::apply_overrides(c, overrides);
  } catch (const marty::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return marty::kExitInputError;
  }
  return marty::run_batch(configs, std::cerr);
}
