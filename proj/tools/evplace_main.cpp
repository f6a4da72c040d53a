#include <cstdint>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "evplace/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"EV charging placement toolkit: accessibility-aware station "
               "siting, lambda sweeps, and fleet trip evaluation"};
  app.require_subcommand(1);

  evplace::CliCommon common;
  double lambda_flag = 0.0;
  std::uint64_t seed_flag = 0;
  std::string solution_path;
  std::string baseline_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", common.scenario_path, "Scenario JSON file")->required();
    sub->add_option("--out-dir", common.out_dir, "Directory for emitted files (default: .)");
    sub->add_option("--format", common.format, "Tabular output format (default: csv)")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve the placement at a single lambda");
  add_common(solve);
  solve->add_option("--lambda", lambda_flag, "Override the scenario's lambda");

  CLI::App* sweep = app.add_subcommand("sweep", "Solve across the scenario's lambda grid");
  add_common(sweep);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Simulate fleet trips against a solution");
  add_common(evaluate);
  evaluate->add_option("--solution", solution_path, "Solution JSON to evaluate")->required();
  evaluate->add_option("--baseline", baseline_path,
                       "Baseline solution for the variability comparison");
  evaluate->add_option("--seed", seed_flag, "Override the scenario's seed");

  CLI::App* access = app.add_subcommand("access", "Report per-node mobility indices and the "
                                                  "equity score");
  add_common(access);

  CLI::App* validate = app.add_subcommand("validate", "Audit a solution file against the "
                                                      "scenario's constraints");
  add_common(validate);
  validate->add_option("--solution", solution_path, "Solution JSON to audit")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;  // usage problems fall under invalid input
  }

  if (solve->parsed() && solve->count("--lambda") > 0) common.lambda_override = lambda_flag;
  if (evaluate->parsed() && evaluate->count("--seed") > 0) common.seed_override = seed_flag;

  return evplace::run_guarded([&]() -> int {
    if (solve->parsed()) return evplace::cmd_solve(common);
    if (sweep->parsed()) return evplace::cmd_sweep(common);
    if (evaluate->parsed()) {
      std::optional<std::string> baseline;
      if (!baseline_path.empty()) baseline = baseline_path;
      return evplace::cmd_evaluate(common, solution_path, baseline);
    }
    if (access->parsed()) return evplace::cmd_access(common);
    if (validate->parsed()) return evplace::cmd_validate(common, solution_path);
    return 1;
  });
}
