#include "evplace/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

#include "evplace/errors.hpp"
#include "evplace/scenario.hpp"

namespace evplace {

namespace {

void emit(const CliCommon& common, const std::string& basename, const std::string& content) {
  std::filesystem::path target = std::filesystem::path(common.out_dir) / basename;
  write_text_atomic(target.string(), content);
  std::cout << basename << "\n";  // basenames only, so output is location-independent
}

Scenario load(const CliCommon& common) {
  Scenario scn = load_scenario(common.scenario_path);
  if (common.lambda_override) {
    if (*common.lambda_override < 0.0) throw ParseError("lambda must be nonnegative");
    scn.instance.lambda = *common.lambda_override;
  }
  if (common.seed_override) scn.seed = *common.seed_override;
  return scn;
}

bool json_format(const CliCommon& common) { return common.format == "json"; }

// Re-derives the terms from the instance so downstream numbers never depend
// on what the solution file claims.
void audit_and_refresh(const PlacementInstance& inst, PlacementSolution& sol,
                       const std::string& what) {
  auto violations = validate_solution(inst, sol);
  if (!violations.empty()) {
    throw InconsistentSolutionError(what + " fails validation: " + violations.front().message);
  }
  auto breakdown = objective_value(inst, sol);
  sol.cost_term = breakdown.cost_term;
  sol.access_term = breakdown.access_term;
  sol.objective = breakdown.objective;
}

}  // namespace

int cmd_solve(const CliCommon& common) {
  Scenario scn = load(common);
  PlacementSolution sol = exact_solve(scn.instance);
  emit(common, "solution.json", solution_to_json(scn, sol, "optimal"));
  return 0;
}

int cmd_sweep(const CliCommon& common) {
  Scenario scn = load(common);
  if (scn.sweep.empty()) throw ParseError("scenario has no sweep values");
  auto points = lambda_sweep(scn.instance, scn.sweep);
  const bool js = json_format(common);
  emit(common, js ? "sweep.json" : "sweep.csv", js ? sweep_to_json(points) : sweep_to_csv(points));
  auto front = pareto_filter(points);
  emit(common, js ? "pareto_front.json" : "pareto_front.csv",
       js ? sweep_to_json(front) : sweep_to_csv(front));
  for (const auto& pt : points) {
    if (pt.status != SolveStatus::Optimal) continue;
    scn.instance.lambda = pt.lambda;
    emit(common, "solution_lambda_" + lambda_label(pt.lambda) + ".json",
         solution_to_json(scn, pt.solution, "optimal"));
  }
  return 0;
}

int cmd_evaluate(const CliCommon& common, const std::string& solution_path,
                 const std::optional<std::string>& baseline_path) {
  Scenario scn = load(common);
  if (!scn.fleet) throw ParseError("scenario has no fleet block");

  SolutionDocument doc = load_solution(solution_path);
  PlacementInstance inst = scn.instance;
  if (doc.lambda) inst.lambda = *doc.lambda;
  audit_and_refresh(inst, doc.solution, "solution");

  const bool synthesized = scn.fleet->origins.empty();
  if (synthesized && !scn.seed) {
    throw ParseError("seed required to synthesize vehicle origins");
  }
  const std::uint64_t seed = scn.seed.value_or(0);

  auto records = run_trips(scn.network, inst, doc.solution, *scn.fleet, seed);
  const bool js = json_format(common);
  emit(common, js ? "trips.json" : "trips.csv",
       js ? trips_to_json(records) : trips_to_csv(records));

  auto rows = aggregate_metrics(records, lambda_label(inst.lambda));

  if (baseline_path) {
    SolutionDocument base = load_solution(*baseline_path);
    PlacementInstance base_inst = scn.instance;
    if (base.lambda) base_inst.lambda = *base.lambda;
    audit_and_refresh(base_inst, base.solution, "baseline");
    auto base_records = run_trips(scn.network, base_inst, base.solution, *scn.fleet, seed);
    emit(common, js ? "baseline_trips.json" : "baseline_trips.csv",
         js ? trips_to_json(base_records) : trips_to_csv(base_records));
    auto base_rows = aggregate_metrics(base_records, lambda_label(base_inst.lambda));
    rows.insert(rows.end(), base_rows.begin(), base_rows.end());
    auto report = variability_report(records, base_records);
    emit(common, "variability.json", variability_to_json(report));
  }

  emit(common, js ? "metrics.json" : "metrics.csv",
       js ? metrics_to_json(rows) : metrics_to_csv(rows));
  return 0;
}

int cmd_access(const CliCommon& common) {
  Scenario scn = load(common);
  auto rows = access_report(scn);
  std::vector<double> epsilons;
  epsilons.reserve(rows.size());
  for (const auto& row : rows) epsilons.push_back(row.epsilon);
  double mem = mem_score(epsilons);
  const bool js = json_format(common);
  emit(common, js ? "access.json" : "access.csv",
       js ? access_report_to_json(rows, mem) : access_report_to_csv(rows, mem));
  return 0;
}

int cmd_validate(const CliCommon& common, const std::string& solution_path) {
  Scenario scn = load(common);
  SolutionDocument doc = load_solution(solution_path);
  if (doc.lambda) scn.instance.lambda = *doc.lambda;

  auto violations = validate_solution(scn.instance, doc.solution);
  if (violations.empty()) {
    auto breakdown = objective_value(scn.instance, doc.solution);
    auto close = [](double claimed, double actual) {
      return std::abs(claimed - actual) <= 1e-9 * (1.0 + std::abs(actual));
    };
    if (doc.cost_term && !close(*doc.cost_term, breakdown.cost_term)) {
      violations.push_back({0, "cost_term does not match the instance"});
    }
    if (doc.access_term && !close(*doc.access_term, breakdown.access_term)) {
      violations.push_back({0, "access_term does not match the instance"});
    }
    if (doc.objective && !close(*doc.objective, breakdown.objective)) {
      violations.push_back({0, "objective does not match the instance"});
    }
  }
  if (!violations.empty()) {
    for (const auto& v : violations) {
      std::cout << "violation (" << v.constraint << "): " << v.message << "\n";
    }
    return 3;
  }
  std::cout << "valid\n";
  return 0;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SubsetLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const OracleSizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const UnknownNodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const UnknownModeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const UnreachableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InconsistentSolutionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const EmptyGroupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NoReachableStationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CapacityExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace evplace
