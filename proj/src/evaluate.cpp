#include "evplace/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>

#include "evplace/errors.hpp"

namespace evplace {

namespace {

double sorted_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

double population_std(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  const double mean = sorted_sum(values) / n;
  std::vector<double> sq;
  sq.reserve(values.size());
  for (double v : values) sq.push_back((v - mean) * (v - mean));
  return std::sqrt(sorted_sum(std::move(sq)) / n);
}

std::vector<double> travel_times(const std::vector<TripRecord>& records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.travel_time_s);
  return out;
}

struct SelectedStation {
  std::string id;
  std::string node;
  int node_index = 0;
  long long slots = 0;
};

std::vector<SelectedStation> selected_stations(const RoadNetwork& net,
                                               const PlacementInstance& inst,
                                               const PlacementSolution& sol) {
  auto smap = station_index_map(inst);
  std::vector<SelectedStation> out;
  out.reserve(sol.selected.size());
  for (const auto& id : sol.selected) {
    auto it = smap.find(id);
    if (it == smap.end()) throw Error("selected station not in instance: " + id);
    const Station& s = inst.stations[it->second];
    out.push_back({s.id, s.node, net.index_of(s.node), s.capacity});
  }
  return out;
}

}  // namespace

std::string to_string(OriginClass c) {
  return c == OriginClass::StationAdjacent ? "station-adjacent" : "edge";
}

OriginClass origin_class_from_string(const std::string& text) {
  if (text == "station-adjacent") return OriginClass::StationAdjacent;
  if (text == "edge") return OriginClass::Edge;
  throw ParseError("unknown origin class: " + text);
}

std::string route_label(OriginClass c) {
  return c == OriginClass::StationAdjacent ? "A" : "B";
}

void validate_fleet(const RoadNetwork& net, const FleetSpec& fleet) {
  if (fleet.vehicle_count < 1) throw Error("vehicle_count must be positive");
  if (!(fleet.initial_soc > 0.0 && fleet.initial_soc <= 1.0)) {
    throw Error("initial_soc must lie in (0, 1]");
  }
  if (!(fleet.battery_capacity_wh > 0.0)) throw Error("battery_capacity_wh must be positive");
  if (!(fleet.consumption_wh_per_m > 0.0)) throw Error("consumption_wh_per_m must be positive");
  if (!(fleet.regen_fraction >= 0.0 && fleet.regen_fraction < 1.0)) {
    throw Error("regen_fraction must lie in [0, 1)");
  }
  if (!(fleet.soc_charge_threshold > 0.0 && fleet.soc_charge_threshold < 1.0)) {
    throw Error("soc_charge_threshold must lie in (0, 1)");
  }
  if (fleet.stop_window_m < 0.0) throw Error("stop_window_m must be nonnegative");
  net.mode(fleet.mode);  // raises UnknownModeError for unknown or empty ids
  for (const auto& o : fleet.origins) net.index_of(o.node);
}

std::vector<VehicleOrigin> synthesize_origins(const RoadNetwork& net,
                                              const PlacementInstance& inst,
                                              const PlacementSolution& sol, int vehicle_count,
                                              std::uint64_t seed) {
  if (vehicle_count < 1) throw Error("vehicle_count must be positive");
  auto stations = selected_stations(net, inst, sol);
  if (stations.empty()) throw Error("cannot synthesize origins without selected stations");

  std::vector<std::string> station_nodes;
  station_nodes.reserve(stations.size());
  for (const auto& s : stations) station_nodes.push_back(s.node);

  std::vector<std::string> pool = net.node_ids();
  std::sort(pool.begin(), pool.end());
  pool.erase(std::remove_if(pool.begin(), pool.end(),
                            [&](const std::string& n) {
                              return std::find(station_nodes.begin(), station_nodes.end(), n) !=
                                     station_nodes.end();
                            }),
             pool.end());
  if (pool.empty() && vehicle_count > 1) {
    throw Error("no non-station nodes available for edge origins");
  }

  std::mt19937_64 rng(seed);
  std::vector<VehicleOrigin> origins;
  origins.reserve(vehicle_count);
  for (int v = 0; v < vehicle_count; ++v) {
    if (v % 2 == 0) {
      const auto& node = station_nodes[(v / 2) % station_nodes.size()];
      origins.push_back({node, OriginClass::StationAdjacent});
    } else {
      const auto& node = pool[static_cast<std::size_t>(rng() % pool.size())];
      origins.push_back({node, OriginClass::Edge});
    }
  }
  return origins;
}

std::vector<std::string> assign_vehicles(const RoadNetwork& net, const PlacementInstance& inst,
                                         const PlacementSolution& sol, const FleetSpec& fleet,
                                         const std::vector<VehicleOrigin>& origins) {
  validate_fleet(net, fleet);
  if (static_cast<int>(origins.size()) != fleet.vehicle_count) {
    throw Error("origin list does not match vehicle_count");
  }
  auto stations = selected_stations(net, inst, sol);
  if (stations.empty()) throw NoReachableStationError("solution selects no stations");
  const double speed = net.mode(fleet.mode).speed_mps;

  std::map<std::string, std::vector<double>> field_cache;
  std::vector<std::string> result;
  result.reserve(origins.size());
  for (const auto& origin : origins) {
    auto it = field_cache.find(origin.node);
    if (it == field_cache.end()) {
      it = field_cache.emplace(origin.node, shortest_distance_field(net, origin.node)).first;
    }
    const auto& dist = it->second;
    int chosen = -1;
    double chosen_time = std::numeric_limits<double>::infinity();
    bool any_reachable = false;
    for (std::size_t j = 0; j < stations.size(); ++j) {
      double d = dist[stations[j].node_index];
      if (!std::isfinite(d)) continue;
      any_reachable = true;
      if (stations[j].slots <= 0) continue;
      double t = d / speed;
      if (t < chosen_time) {
        chosen_time = t;
        chosen = static_cast<int>(j);
      }
    }
    if (chosen < 0) {
      if (!any_reachable) {
        throw NoReachableStationError("no selected station is reachable from " + origin.node);
      }
      throw CapacityExhaustedError("no reachable selected station has a free slot for " +
                                   origin.node);
    }
    stations[chosen].slots -= 1;
    result.push_back(stations[chosen].id);
  }
  return result;
}

TripRecord simulate_trip(const RoadNetwork& net, const VehicleOrigin& origin,
                         const std::string& station_node, const FleetSpec& fleet) {
  Path path = shortest_path(net, origin.node, station_node, fleet.mode);

  TripRecord rec;
  rec.origin = origin.node;
  rec.origin_class = origin.origin_class;
  rec.route = path.nodes;
  rec.travel_time_s = path.time_s;
  rec.distance_m = path.distance_m;

  const std::size_t stops = path.nodes.size() >= 2 ? path.nodes.size() - 2 : 0;
  rec.traction_energy_wh = rec.distance_m * fleet.consumption_wh_per_m;
  double braking_share = 0.0;
  if (rec.distance_m > 0.0) {
    braking_share =
        std::min(1.0, static_cast<double>(stops) * fleet.stop_window_m / rec.distance_m);
  }
  rec.regen_energy_wh = fleet.regen_fraction * rec.traction_energy_wh * braking_share;
  rec.net_energy_wh = rec.traction_energy_wh - rec.regen_energy_wh;

  const double available_wh = fleet.initial_soc * fleet.battery_capacity_wh;
  rec.battery_depleted = rec.net_energy_wh > available_wh;
  rec.final_soc = std::max(0.0, fleet.initial_soc - rec.net_energy_wh / fleet.battery_capacity_wh);
  return rec;
}

std::vector<TripRecord> run_trips(const RoadNetwork& net, const PlacementInstance& inst,
                                  const PlacementSolution& sol, const FleetSpec& fleet,
                                  std::uint64_t seed) {
  validate_fleet(net, fleet);
  std::vector<VehicleOrigin> origins;
  if (fleet.origins.empty()) {
    origins = synthesize_origins(net, inst, sol, fleet.vehicle_count, seed);
  } else {
    origins.reserve(fleet.vehicle_count);
    for (int v = 0; v < fleet.vehicle_count; ++v) {
      origins.push_back(fleet.origins[static_cast<std::size_t>(v) % fleet.origins.size()]);
    }
  }
  auto assigned = assign_vehicles(net, inst, sol, fleet, origins);

  auto smap = station_index_map(inst);
  std::vector<TripRecord> records;
  records.reserve(origins.size());
  for (std::size_t v = 0; v < origins.size(); ++v) {
    const Station& s = inst.stations[smap.at(assigned[v])];
    TripRecord rec = simulate_trip(net, origins[v], s.node, fleet);
    rec.vehicle = static_cast<int>(v);
    rec.station = s.id;
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<MetricsRow> aggregate_metrics(const std::vector<TripRecord>& records,
                                          const std::string& label) {
  if (records.empty()) throw EmptyGroupError("no trip records to aggregate");
  std::vector<MetricsRow> rows;
  for (OriginClass c : {OriginClass::StationAdjacent, OriginClass::Edge}) {
    std::vector<double> times, dists, energies;
    for (const auto& r : records) {
      if (r.origin_class != c) continue;
      times.push_back(r.travel_time_s);
      dists.push_back(r.distance_m);
      energies.push_back(r.net_energy_wh);
    }
    if (times.empty()) continue;
    MetricsRow row;
    row.label = label;
    row.route = route_label(c);
    row.trip_count = static_cast<int>(times.size());
    const double n = static_cast<double>(times.size());
    row.mean_travel_time_s = sorted_sum(std::move(times)) / n;
    row.mean_distance_m = sorted_sum(std::move(dists)) / n;
    row.mean_net_energy_wh = sorted_sum(std::move(energies)) / n;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_metric_values(double mean_travel_time_s, double mean_distance_m,
                                 double mean_net_energy_wh) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.3f, %.3f, %.4f", mean_travel_time_s, mean_distance_m,
                mean_net_energy_wh);
  return buf;
}

VariabilityReport variability_report(const std::vector<TripRecord>& records_a,
                                     const std::vector<TripRecord>& records_b) {
  if (records_a.size() < 2 || records_b.size() < 2) {
    throw InsufficientDataError("variability needs at least two records per side");
  }
  const auto times_a = travel_times(records_a);
  const auto times_b = travel_times(records_b);

  VariabilityReport out;
  out.std_a = population_std(times_a);
  out.std_b = population_std(times_b);
  const double mean_a = sorted_sum(times_a) / static_cast<double>(times_a.size());
  const double mean_b = sorted_sum(times_b) / static_cast<double>(times_b.size());
  out.cv_a = mean_a > 0.0 ? out.std_a / mean_a : 0.0;
  out.cv_b = mean_b > 0.0 ? out.std_b / mean_b : 0.0;
  if (out.std_b > 0.0) {
    out.relative_change = (out.std_b - out.std_a) / out.std_b;
  } else {
    out.relative_change =
        out.std_a == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace evplace
