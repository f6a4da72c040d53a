#pragma once

// Scenario file ingestion (one JSON document describing the network, the
// placement instance, and optional profile/fleet/sweep blocks) plus every
// on-disk artifact the command-line tool writes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evplace/access.hpp"
#include "evplace/evaluate.hpp"
#include "evplace/model.hpp"
#include "evplace/network.hpp"
#include "evplace/solver.hpp"

namespace evplace {

struct Scenario {
  RoadNetwork network;
  // Parsed from the file, or derived from the network's services the moment
  // something needs one (score filling, the access report). Absent when the
  // scenario never exercises accessibility scoring.
  std::optional<AccessibilityProfile> profile;
  PlacementInstance instance;
  std::optional<FleetSpec> fleet;
  std::vector<double> sweep;
  std::optional<std::uint64_t> seed;
};

// Parses and cross-checks a scenario document. Unknown keys are rejected;
// absent access scores are filled from the mobility index (stations score at
// kappa = 0, demand points at their own kappa). All structural or referential
// problems surface as ParseError.
Scenario parse_scenario(const std::string& text, const std::string& name);
Scenario load_scenario(const std::string& path);

struct SolutionDocument {
  std::optional<double> lambda;
  std::optional<int> p;
  std::optional<double> cost_term;
  std::optional<double> access_term;
  std::optional<double> objective;
  std::string status;
  PlacementSolution solution;
};

std::string solution_to_json(const Scenario& scn, const PlacementSolution& sol,
                             const std::string& status);
SolutionDocument load_solution(const std::string& path);

// The same column set serves the full sweep table and the filtered front.
std::string sweep_to_csv(const std::vector<ParetoPoint>& points);
std::string sweep_to_json(const std::vector<ParetoPoint>& points);

std::string trips_to_csv(const std::vector<TripRecord>& records);
std::string trips_to_json(const std::vector<TripRecord>& records);

std::string metrics_to_csv(const std::vector<MetricsRow>& rows);
std::string metrics_to_json(const std::vector<MetricsRow>& rows);

std::string variability_to_json(const VariabilityReport& report);

struct AccessReportRow {
  std::string node;
  double kappa = 0.0;  // taken from the first demand point on the node, else 0
  double epsilon = 0.0;
};

std::vector<AccessReportRow> access_report(const Scenario& scn);
std::string access_report_to_csv(const std::vector<AccessReportRow>& rows, double mem);
std::string access_report_to_json(const std::vector<AccessReportRow>& rows, double mem);

// Temp-file write plus rename, so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);  // ParseError when unreadable

std::string lambda_label(double lambda);  // compact rendering used in filenames

}  // namespace evplace
