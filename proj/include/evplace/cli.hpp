#pragma once

// Subcommand bodies behind the evplace binary. Each writes its artifacts into
// the output directory (atomically), prints the emitted basenames on stdout,
// and returns the process exit code.
//
// Exit codes: 0 success, 1 internal error, 2 infeasible, 3 invalid input or
// failed validation, 4 enumeration guard tripped.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace evplace {

struct CliCommon {
  std::string scenario_path;
  std::string out_dir = ".";
  std::string format = "csv";  // csv | json; solution documents are always JSON
  std::optional<double> lambda_override;
  std::optional<std::uint64_t> seed_override;
};

int cmd_solve(const CliCommon& common);
int cmd_sweep(const CliCommon& common);
int cmd_evaluate(const CliCommon& common, const std::string& solution_path,
                 const std::optional<std::string>& baseline_path);
int cmd_access(const CliCommon& common);
int cmd_validate(const CliCommon& common, const std::string& solution_path);

// Runs a command body and maps every toolkit error onto the exit-code table.
int run_guarded(const std::function<int()>& body);

}  // namespace evplace
