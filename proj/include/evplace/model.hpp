#pragma once

// Capacitated placement model: instance/solution value types, the objective
// decomposition, and the constraint audit.
//
// Constraint numbering used throughout violations and reports:
//   (1) every demand assigned exactly once
//   (2) exactly p stations selected
//   (3) assignments only to selected stations
//   (4) demand-weighted load within station capacity
//   (5) selected capacity covers total demand
//   (6) integrality (guaranteed by the representation)
// Code 0 marks structural issues (unknown ids, forbidden pairs).

#include <map>
#include <string>
#include <vector>

#include "evplace/network.hpp"

namespace evplace {

enum class AccessIndexing { Station, Demand };

struct DemandPoint {
  std::string id;
  std::string node;
  int weight = 1;
  double kappa = 0.0;
  double access_score = 0.0;  // enters the objective under demand indexing
};

struct Station {
  std::string id;
  std::string node;
  int capacity = 1;
  double access_score = 0.0;  // enters the objective under station indexing
};

struct PlacementInstance {
  std::vector<DemandPoint> demand_points;
  std::vector<Station> stations;
  CostMatrix cost;  // |I| x |J|; forbidden entries are excluded from the domain
  double lambda = 0.0;
  int p = 0;
  AccessIndexing access_indexing = AccessIndexing::Station;
};

struct PlacementSolution {
  std::vector<std::string> selected;              // station ids, ascending
  std::map<std::string, std::string> assignment;  // demand id -> station id
  double cost_term = 0.0;
  double access_term = 0.0;
  double objective = 0.0;  // cost_term - lambda * access_term
};

// Throws on malformed instances (duplicate ids, nonpositive weights or
// capacities, dimension mismatches, negative costs, p out of range).
void validate_instance(const PlacementInstance& inst);

std::map<std::string, std::size_t> demand_index_map(const PlacementInstance& inst);
std::map<std::string, std::size_t> station_index_map(const PlacementInstance& inst);

// Score entering the objective for assigning demand i to station j.
double access_weight(const PlacementInstance& inst, std::size_t demand_idx,
                     std::size_t station_idx);

struct ObjectiveBreakdown {
  double cost_term = 0.0;
  double access_term = 0.0;
  double objective = 0.0;
};

// Recomputes both objective terms from scratch. Throws
// InconsistentSolutionError when ids do not resolve, an assignment targets a
// non-selected station, or a forbidden pair is used.
ObjectiveBreakdown objective_value(const PlacementInstance& inst, const PlacementSolution& sol);

struct Violation {
  int constraint = 0;  // 1-6 per the model, 0 for structural issues
  std::string message;
};

// Empty result == feasible. Never throws on bad solutions; it reports.
std::vector<Violation> validate_solution(const PlacementInstance& inst,
                                         const PlacementSolution& sol);

struct FeasibilityCheck {
  long long total_demand = 0;
  long long total_capacity = 0;
  bool feasible_hint = false;  // total capacity covers total demand
  bool top_p_covers = false;   // p largest capacities cover total demand
};

FeasibilityCheck check_feasibility_condition(const PlacementInstance& inst);

struct UniformReduction {
  bool uniform = false;  // all active-side access scores equal (within 1e-12)
  double mean_score = 0.0;
  double offset = 0.0;  // lambda * mean * |I|: the constant the objective shifts by
};

UniformReduction detect_uniform_reduction(const PlacementInstance& inst);

struct AccessDegeneracy {
  bool constant = false;  // access term identical on every feasible solution
  double value = 0.0;
};

// Under demand indexing, constraints (1) and (3) pin the access term to the
// sum of demand scores regardless of the selection, so lambda cannot steer
// the optimum. This diagnostic reports that constancy.
AccessDegeneracy access_term_degeneracy(const PlacementInstance& inst);

}  // namespace evplace
