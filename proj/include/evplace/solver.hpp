#pragma once

// Placement solvers: sequential feasibility construction, an exact
// subset-enumeration solver with a capacitated assignment core, the
// exhaustive reference oracle, and the lambda sweep.
//
// Determinism: ties are broken toward the lexicographically smallest selected
// station id set, then the smallest assignment vector (station ids in demand
// id order). The oracle applies the identical rule.

#include <map>
#include <string>
#include <vector>

#include "evplace/model.hpp"

namespace evplace {

struct SolveOptions {
  long long subset_limit = 1'000'000;  // max station subsets exact_solve may enumerate
};

struct GreedyResult {
  PlacementSolution solution;
  bool meets_station_count = false;  // |selected| == p
};

// First-fit allocation: demands in input order, each taking the first station
// (instance order) with enough remaining capacity. Succeeds for unit demands
// whenever total capacity covers total demand; integer demands can still get
// stuck on packing gaps (GreedyStuckError).
GreedyResult greedy_feasible(const PlacementInstance& inst);

// Global optimum over all p-subsets of stations, solving the capacitated
// assignment exactly per subset. Throws InfeasibleError when no subset admits
// a complete assignment and SubsetLimitError past the enumeration guard.
PlacementSolution exact_solve(const PlacementInstance& inst, const SolveOptions& opts = {});

// Pure transport-cost optimum with the accessibility term disabled outright.
PlacementSolution cost_only_solution(const PlacementInstance& inst, const SolveOptions& opts = {});

// Maximum-total-accessibility solution, ties toward lower cost: the limit the
// scalarized optimum reaches for large lambda.
PlacementSolution access_maximizing_solution(const PlacementInstance& inst,
                                             const SolveOptions& opts = {});

struct AssignmentResult {
  std::map<std::string, std::string> assignment;  // demand id -> station id
  double weight = 0.0;  // sum of d_i * c_ij - lambda * eps over the assignment
};

// Exact capacitated assignment against a fixed set of open stations. Unit
// demands route through min-cost flow; general integer demands through
// branch-and-bound.
AssignmentResult assignment_subproblem(const PlacementInstance& inst,
                                       const std::vector<std::string>& open_station_ids);

// Exhaustive reference: every p-subset x every capacity-respecting assignment,
// no bounds or pruning shared with exact_solve. Guarded to |stations| <= 8 and
// |demand| <= 10 (OracleSizeError beyond).
PlacementSolution brute_force_oracle(const PlacementInstance& inst);

enum class SolveStatus { Optimal, Infeasible, SubsetLimitExceeded };

std::string to_string(SolveStatus status);

struct ParetoPoint {
  double lambda = 0.0;
  double cost_term = 0.0;
  double access_term = 0.0;
  PlacementSolution solution;
  SolveStatus status = SolveStatus::Optimal;
  bool saturated = false;  // selection equals the access-maximizing selection
  std::string error;
};

// Solves the instance once per lambda (ascending grid). Verifies that cost
// and access terms are nondecreasing across optimal points and that the
// lambda = 0 point matches the cost-only optimum; a violation of either is an
// internal error, not a data error.
std::vector<ParetoPoint> lambda_sweep(const PlacementInstance& inst,
                                      const std::vector<double>& lambdas,
                                      const SolveOptions& opts = {});

// Non-dominated subset in (min cost_term, max access_term); keeps input
// (ascending lambda) order. Non-optimal points are dropped.
std::vector<ParetoPoint> pareto_filter(const std::vector<ParetoPoint>& points);

}  // namespace evplace
