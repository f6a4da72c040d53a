#pragma once

// Fleet-level evaluation of a placement: vehicles drive shortest-time routes
// to their assigned stations, with linear traction energy and a braking-window
// regeneration credit at intermediate stops.

#include <cstdint>
#include <string>
#include <vector>

#include "evplace/model.hpp"
#include "evplace/network.hpp"

namespace evplace {

enum class OriginClass { StationAdjacent, Edge };

std::string to_string(OriginClass c);
OriginClass origin_class_from_string(const std::string& text);  // throws ParseError

// Table rows group by route: A = station-adjacent origins, B = edge origins.
std::string route_label(OriginClass c);

struct VehicleOrigin {
  std::string node;
  OriginClass origin_class = OriginClass::Edge;
};

struct FleetSpec {
  int vehicle_count = 0;
  double initial_soc = 1.0;            // fraction of battery capacity on departure
  double battery_capacity_wh = 50000.0;
  double consumption_wh_per_m = 0.15;
  double regen_fraction = 0.0;         // in [0,1): recoverable share while braking
  double soc_charge_threshold = 0.2;   // in (0,1): SOC level that sends a vehicle to charge
  double stop_window_m = 50.0;         // braking distance credited per intermediate stop
  std::string mode;
  std::vector<VehicleOrigin> origins;  // synthesized from the network when empty
};

void validate_fleet(const RoadNetwork& net, const FleetSpec& fleet);

struct TripRecord {
  int vehicle = 0;
  std::string origin;
  OriginClass origin_class = OriginClass::Edge;
  std::string station;  // station id
  std::vector<std::string> route;
  double travel_time_s = 0.0;
  double distance_m = 0.0;
  double traction_energy_wh = 0.0;
  double regen_energy_wh = 0.0;
  double net_energy_wh = 0.0;
  double final_soc = 0.0;
  bool battery_depleted = false;  // recorded, never thrown
};

// Even vehicle ids start on selected-station nodes (round robin in station
// order), odd ids on seeded-random non-station nodes.
std::vector<VehicleOrigin> synthesize_origins(const RoadNetwork& net,
                                              const PlacementInstance& inst,
                                              const PlacementSolution& sol, int vehicle_count,
                                              std::uint64_t seed);

// Station id per vehicle. Nearest selected station by travel time with a free
// slot (per-run slot budget = capacity); ties break to the smaller station id;
// slots are consumed in vehicle order.
std::vector<std::string> assign_vehicles(const RoadNetwork& net, const PlacementInstance& inst,
                                         const PlacementSolution& sol, const FleetSpec& fleet,
                                         const std::vector<VehicleOrigin>& origins);

TripRecord simulate_trip(const RoadNetwork& net, const VehicleOrigin& origin,
                         const std::string& station_node, const FleetSpec& fleet);

// Full pipeline: origins (given or synthesized), assignment, one trip per
// vehicle. Explicit origin lists shorter than the fleet cycle.
std::vector<TripRecord> run_trips(const RoadNetwork& net, const PlacementInstance& inst,
                                  const PlacementSolution& sol, const FleetSpec& fleet,
                                  std::uint64_t seed);

struct MetricsRow {
  std::string label;  // typically the lambda value the records came from
  std::string route;  // "A" or "B"
  double mean_travel_time_s = 0.0;
  double mean_distance_m = 0.0;
  double mean_net_energy_wh = 0.0;
  int trip_count = 0;
};

// One row per origin class present, A before B. Means are permutation
// invariant (summed over sorted values).
std::vector<MetricsRow> aggregate_metrics(const std::vector<TripRecord>& records,
                                          const std::string& label);

// Fixed table rendering: time and distance to 3 decimals, energy to 4.
std::string format_metric_values(double mean_travel_time_s, double mean_distance_m,
                                 double mean_net_energy_wh);

struct VariabilityReport {
  double std_a = 0.0;  // candidate side
  double std_b = 0.0;  // baseline side
  double cv_a = 0.0;
  double cv_b = 0.0;
  double relative_change = 0.0;  // (std_b - std_a) / std_b
};

// Population standard deviation and coefficient of variation of travel time.
// Side b is the baseline; positive relative_change means a is steadier.
VariabilityReport variability_report(const std::vector<TripRecord>& records_a,
                                     const std::vector<TripRecord>& records_b);

}  // namespace evplace
