#include "evplace/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "evplace/errors.hpp"

namespace evplace {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (allowed.count(it.key()) == 0) {
      throw ParseError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

const json& need(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing key '" + key + "' in " + where);
  return *it;
}

std::string as_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw ParseError(what + " must be a string");
  return v.get<std::string>();
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError(what + " must be a number");
  return v.get<double>();
}

long long as_integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ParseError(what + " must be an integer");
  return v.get<long long>();
}

bool as_bool(const json& v, const std::string& what) {
  if (!v.is_boolean()) throw ParseError(what + " must be a boolean");
  return v.get<bool>();
}

const json& as_object(const json& v, const std::string& what) {
  if (!v.is_object()) throw ParseError(what + " must be an object");
  return v;
}

const json& as_array(const json& v, const std::string& what) {
  if (!v.is_array()) throw ParseError(what + " must be an array");
  return v;
}

RoadNetwork parse_network(const json& block) {
  as_object(block, "'network'");
  check_keys(block, {"nodes", "edges", "modes", "services"}, "network");
  NetworkDef def;
  for (const auto& n : as_array(need(block, "nodes", "network"), "'network.nodes'")) {
    def.nodes.push_back(as_string(n, "node id"));
  }
  for (const auto& e : as_array(need(block, "edges", "network"), "'network.edges'")) {
    as_object(e, "edge entry");
    check_keys(e, {"from", "to", "length_m", "bidirectional"}, "edge entry");
    EdgeDef edge;
    edge.from = as_string(need(e, "from", "edge entry"), "edge 'from'");
    edge.to = as_string(need(e, "to", "edge entry"), "edge 'to'");
    edge.length_m = as_number(need(e, "length_m", "edge entry"), "edge 'length_m'");
    if (e.contains("bidirectional")) {
      edge.bidirectional = as_bool(e["bidirectional"], "edge 'bidirectional'");
    }
    def.edges.push_back(std::move(edge));
  }
  const json& modes = as_object(need(block, "modes", "network"), "'network.modes'");
  for (auto it = modes.begin(); it != modes.end(); ++it) {
    const json& m = as_object(it.value(), "mode '" + it.key() + "'");
    check_keys(m, {"speed_mps", "cost_per_mile", "tau_s"}, "mode '" + it.key() + "'");
    ModeSpec spec;
    spec.speed_mps = as_number(need(m, "speed_mps", "mode '" + it.key() + "'"), "'speed_mps'");
    if (m.contains("cost_per_mile")) spec.cost_per_mile = as_number(m["cost_per_mile"], "'cost_per_mile'");
    if (m.contains("tau_s")) spec.tau_s = as_number(m["tau_s"], "'tau_s'");
    def.modes[it.key()] = spec;
  }
  if (block.contains("services")) {
    for (const auto& s : as_array(block["services"], "'network.services'")) {
      as_object(s, "service entry");
      check_keys(s, {"node", "type"}, "service entry");
      def.services.push_back({as_string(need(s, "node", "service entry"), "service 'node'"),
                              as_string(need(s, "type", "service entry"), "service 'type'")});
    }
  }
  return RoadNetwork(std::move(def));
}

AccessibilityProfile built_default_profile(const RoadNetwork& net) {
  std::set<std::string> types;
  for (const auto& poi : net.services()) types.insert(poi.service_type);
  std::vector<ServicePriority> priorities;
  for (const auto& t : types) priorities.push_back({t, 1.0});
  return default_profile(net, priorities);
}

AccessibilityProfile parse_profile(const json* block, const RoadNetwork& net) {
  if (block == nullptr) return built_default_profile(net);
  as_object(*block, "'profile'");
  check_keys(*block, {"modes", "service_types", "normalization"}, "profile");
  AccessibilityProfile profile;
  std::set<std::string> seen_types;
  for (const auto& s : as_array(need(*block, "service_types", "profile"), "'profile.service_types'")) {
    as_object(s, "service type entry");
    check_keys(s, {"id", "beta"}, "service type entry");
    ServicePriority p;
    p.service_type = as_string(need(s, "id", "service type entry"), "service type 'id'");
    p.beta = as_number(need(s, "beta", "service type entry"), "service type 'beta'");
    if (!seen_types.insert(p.service_type).second) {
      throw ParseError("duplicate service type in profile: " + p.service_type);
    }
    profile.service_types.push_back(std::move(p));
  }
  if (block->contains("modes")) {
    std::set<std::string> seen_modes;
    for (const auto& m : as_array((*block)["modes"], "'profile.modes'")) {
      std::string id = as_string(m, "profile mode id");
      if (!seen_modes.insert(id).second) throw ParseError("duplicate mode in profile: " + id);
      const ModeSpec& spec = net.mode(id);
      profile.modes.push_back({id, spec.cost_per_mile, spec.tau_s});
    }
  } else {
    for (const auto& [id, spec] : net.modes()) {
      profile.modes.push_back({id, spec.cost_per_mile, spec.tau_s});
    }
  }
  if (block->contains("normalization")) {
    const json& norm = as_object((*block)["normalization"], "'profile.normalization'");
    for (auto it = norm.begin(); it != norm.end(); ++it) {
      profile.normalization[it.key()] =
          static_cast<int>(as_integer(it.value(), "normalizer for '" + it.key() + "'"));
    }
  }
  return profile;
}

// Does any instance entry leave its access score to be computed?
bool wants_derived_scores(const json& block) {
  if (!block.is_object()) return false;
  for (const char* key : {"demand_points", "stations"}) {
    auto it = block.find(key);
    if (it == block.end() || !it->is_array()) continue;
    for (const auto& entry : *it) {
      if (entry.is_object() && !entry.contains("access_score")) return true;
    }
  }
  return false;
}

PlacementInstance parse_instance(const json& block, const RoadNetwork& net,
                                 const AccessibilityProfile* profile) {
  as_object(block, "'instance'");
  check_keys(block, {"demand_points", "stations", "cost", "lambda", "p", "access_indexing"},
             "instance");
  PlacementInstance inst;
  std::vector<bool> demand_needs_score;
  std::vector<bool> station_needs_score;

  for (const auto& d : as_array(need(block, "demand_points", "instance"),
                                "'instance.demand_points'")) {
    as_object(d, "demand point entry");
    check_keys(d, {"id", "node", "weight", "kappa", "access_score"}, "demand point entry");
    DemandPoint dp;
    dp.id = as_string(need(d, "id", "demand point entry"), "demand 'id'");
    dp.node = as_string(need(d, "node", "demand point entry"), "demand 'node'");
    if (d.contains("weight")) dp.weight = static_cast<int>(as_integer(d["weight"], "demand 'weight'"));
    if (d.contains("kappa")) dp.kappa = as_number(d["kappa"], "demand 'kappa'");
    bool has_score = d.contains("access_score");
    if (has_score) dp.access_score = as_number(d["access_score"], "demand 'access_score'");
    demand_needs_score.push_back(!has_score);
    inst.demand_points.push_back(std::move(dp));
  }
  for (const auto& s : as_array(need(block, "stations", "instance"), "'instance.stations'")) {
    as_object(s, "station entry");
    check_keys(s, {"id", "node", "capacity", "access_score"}, "station entry");
    Station st;
    st.id = as_string(need(s, "id", "station entry"), "station 'id'");
    st.node = as_string(need(s, "node", "station entry"), "station 'node'");
    if (s.contains("capacity")) {
      st.capacity = static_cast<int>(as_integer(s["capacity"], "station 'capacity'"));
    }
    bool has_score = s.contains("access_score");
    if (has_score) st.access_score = as_number(s["access_score"], "station 'access_score'");
    station_needs_score.push_back(!has_score);
    inst.stations.push_back(std::move(st));
  }

  for (const auto& dp : inst.demand_points) net.index_of(dp.node);
  for (const auto& st : inst.stations) net.index_of(st.node);

  inst.p = static_cast<int>(as_integer(need(block, "p", "instance"), "'instance.p'"));
  if (block.contains("lambda")) inst.lambda = as_number(block["lambda"], "'instance.lambda'");
  if (block.contains("access_indexing")) {
    std::string ai = as_string(block["access_indexing"], "'instance.access_indexing'");
    if (ai == "station") {
      inst.access_indexing = AccessIndexing::Station;
    } else if (ai == "demand") {
      inst.access_indexing = AccessIndexing::Demand;
    } else {
      throw ParseError("access_indexing must be 'station' or 'demand', got '" + ai + "'");
    }
  }

  const json& cost = as_object(need(block, "cost", "instance"), "'instance.cost'");
  std::string source = as_string(need(cost, "source", "instance.cost"), "'cost.source'");
  if (source == "computed") {
    check_keys(cost, {"source", "mode", "metric", "unreachable"}, "instance.cost");
    std::string mode = as_string(need(cost, "mode", "instance.cost"), "'cost.mode'");
    CostMetric metric = CostMetric::Distance;
    if (cost.contains("metric")) {
      std::string m = as_string(cost["metric"], "'cost.metric'");
      if (m == "distance") {
        metric = CostMetric::Distance;
      } else if (m == "time") {
        metric = CostMetric::Time;
      } else {
        throw ParseError("cost.metric must be 'distance' or 'time', got '" + m + "'");
      }
    }
    UnreachablePolicy policy = UnreachablePolicy::Error;
    if (cost.contains("unreachable")) {
      std::string u = as_string(cost["unreachable"], "'cost.unreachable'");
      if (u == "error") {
        policy = UnreachablePolicy::Error;
      } else if (u == "forbid") {
        policy = UnreachablePolicy::Forbid;
      } else {
        throw ParseError("cost.unreachable must be 'error' or 'forbid', got '" + u + "'");
      }
    }
    std::vector<std::string> demand_nodes, station_nodes;
    for (const auto& dp : inst.demand_points) demand_nodes.push_back(dp.node);
    for (const auto& st : inst.stations) station_nodes.push_back(st.node);
    inst.cost = cost_matrix(net, demand_nodes, station_nodes, mode, metric, policy);
  } else if (source == "explicit") {
    check_keys(cost, {"source", "matrix"}, "instance.cost");
    const json& matrix = as_array(need(cost, "matrix", "instance.cost"), "'cost.matrix'");
    if (matrix.size() != inst.demand_points.size()) {
      throw ParseError("cost.matrix must have one row per demand point");
    }
    CostMatrix cm(inst.demand_points.size(), inst.stations.size());
    for (std::size_t r = 0; r < matrix.size(); ++r) {
      const json& row = as_array(matrix[r], "cost.matrix row");
      if (row.size() != inst.stations.size()) {
        throw ParseError("cost.matrix row " + std::to_string(r) +
                         " must have one column per station");
      }
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c].is_null()) {
          cm.set_forbidden(r, c);
        } else {
          cm.set(r, c, as_number(row[c], "cost.matrix entry"));
        }
      }
    }
    inst.cost = std::move(cm);
  } else {
    throw ParseError("cost.source must be 'computed' or 'explicit', got '" + source + "'");
  }

  for (std::size_t i = 0; i < inst.demand_points.size(); ++i) {
    if (!demand_needs_score[i]) continue;
    if (profile == nullptr) {
      throw ParseError("demand point '" + inst.demand_points[i].id +
                       "' has no access_score and the scenario has no usable profile");
    }
    inst.demand_points[i].access_score =
        mobility_index(net, inst.demand_points[i].node, *profile, inst.demand_points[i].kappa)
            .epsilon;
  }
  for (std::size_t j = 0; j < inst.stations.size(); ++j) {
    if (!station_needs_score[j]) continue;
    if (profile == nullptr) {
      throw ParseError("station '" + inst.stations[j].id +
                       "' has no access_score and the scenario has no usable profile");
    }
    inst.stations[j].access_score =
        mobility_index(net, inst.stations[j].node, *profile, 0.0).epsilon;
  }

  validate_instance(inst);
  return inst;
}

FleetSpec parse_fleet(const json& block, const RoadNetwork& net) {
  as_object(block, "'fleet'");
  check_keys(block,
             {"vehicle_count", "initial_soc", "battery_capacity_wh", "consumption_wh_per_m",
              "regen_fraction", "soc_charge_threshold", "stop_window_m", "mode", "origins"},
             "fleet");
  FleetSpec fleet;
  fleet.vehicle_count =
      static_cast<int>(as_integer(need(block, "vehicle_count", "fleet"), "'fleet.vehicle_count'"));
  if (block.contains("initial_soc")) {
    fleet.initial_soc = as_number(block["initial_soc"], "'fleet.initial_soc'");
  }
  if (block.contains("battery_capacity_wh")) {
    fleet.battery_capacity_wh = as_number(block["battery_capacity_wh"], "'fleet.battery_capacity_wh'");
  }
  if (block.contains("consumption_wh_per_m")) {
    fleet.consumption_wh_per_m =
        as_number(block["consumption_wh_per_m"], "'fleet.consumption_wh_per_m'");
  }
  if (block.contains("regen_fraction")) {
    fleet.regen_fraction = as_number(block["regen_fraction"], "'fleet.regen_fraction'");
  }
  if (block.contains("soc_charge_threshold")) {
    fleet.soc_charge_threshold =
        as_number(block["soc_charge_threshold"], "'fleet.soc_charge_threshold'");
  }
  if (block.contains("stop_window_m")) {
    fleet.stop_window_m = as_number(block["stop_window_m"], "'fleet.stop_window_m'");
  }
  if (block.contains("mode")) {
    fleet.mode = as_string(block["mode"], "'fleet.mode'");
  } else if (!net.modes().empty()) {
    fleet.mode = net.modes().begin()->first;
  }
  if (block.contains("origins")) {
    for (const auto& o : as_array(block["origins"], "'fleet.origins'")) {
      as_object(o, "origin entry");
      check_keys(o, {"node", "origin_class"}, "origin entry");
      VehicleOrigin origin;
      origin.node = as_string(need(o, "node", "origin entry"), "origin 'node'");
      origin.origin_class = origin_class_from_string(
          as_string(need(o, "origin_class", "origin entry"), "origin 'origin_class'"));
      fleet.origins.push_back(std::move(origin));
    }
  }
  validate_fleet(net, fleet);
  return fleet;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(name + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(name + ": top level must be an object");
  try {
    check_keys(doc, {"network", "profile", "instance", "fleet", "sweep", "seed"}, "scenario");
    Scenario scn;
    scn.network = parse_network(need(doc, "network", "scenario"));
    const json& instance_block = need(doc, "instance", "scenario");
    const json* profile_block = doc.contains("profile") ? &doc["profile"] : nullptr;
    if (profile_block != nullptr || wants_derived_scores(instance_block)) {
      scn.profile = parse_profile(profile_block, scn.network);
      validate_profile(*scn.profile, scn.network);
    }
    scn.instance = parse_instance(instance_block, scn.network,
                                  scn.profile ? &*scn.profile : nullptr);
    if (doc.contains("fleet")) scn.fleet = parse_fleet(doc["fleet"], scn.network);
    if (doc.contains("sweep")) {
      for (const auto& v : as_array(doc["sweep"], "'sweep'")) {
        double lambda = as_number(v, "sweep entry");
        if (lambda < 0.0) throw ParseError("sweep values must be nonnegative");
        if (!scn.sweep.empty() && lambda < scn.sweep.back()) {
          throw ParseError("sweep values must be ascending");
        }
        scn.sweep.push_back(lambda);
      }
    }
    if (doc.contains("seed")) {
      long long seed = as_integer(doc["seed"], "'seed'");
      if (seed < 0) throw ParseError("seed must be nonnegative");
      scn.seed = static_cast<std::uint64_t>(seed);
    }
    return scn;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(name + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  return parse_scenario(read_text(path), path);
}

std::string solution_to_json(const Scenario& scn, const PlacementSolution& sol,
                             const std::string& status) {
  json doc;
  doc["lambda"] = scn.instance.lambda;
  doc["p"] = scn.instance.p;
  doc["status"] = status;
  doc["selected"] = sol.selected;
  doc["assignment"] = sol.assignment;
  doc["cost_term"] = sol.cost_term;
  doc["access_term"] = sol.access_term;
  doc["objective"] = sol.objective;
  json audit = json::array();
  for (const auto& v : validate_solution(scn.instance, sol)) {
    audit.push_back({{"constraint", v.constraint}, {"message", v.message}});
  }
  doc["constraint_audit"] = audit;
  AccessDegeneracy deg = access_term_degeneracy(scn.instance);
  if (deg.constant) {
    doc["access_degeneracy"] = {{"constant", true}, {"value", deg.value}};
  }
  return doc.dump(2) + "\n";
}

SolutionDocument load_solution(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(path + ": top level must be an object");
  check_keys(doc,
             {"lambda", "p", "status", "selected", "assignment", "cost_term", "access_term",
              "objective", "constraint_audit", "access_degeneracy"},
             "solution document");
  SolutionDocument out;
  if (doc.contains("lambda")) out.lambda = as_number(doc["lambda"], "'lambda'");
  if (doc.contains("p")) out.p = static_cast<int>(as_integer(doc["p"], "'p'"));
  if (doc.contains("status")) out.status = as_string(doc["status"], "'status'");
  if (doc.contains("cost_term")) out.cost_term = as_number(doc["cost_term"], "'cost_term'");
  if (doc.contains("access_term")) out.access_term = as_number(doc["access_term"], "'access_term'");
  if (doc.contains("objective")) out.objective = as_number(doc["objective"], "'objective'");
  for (const auto& s : as_array(need(doc, "selected", "solution document"), "'selected'")) {
    out.solution.selected.push_back(as_string(s, "selected station id"));
  }
  const json& assignment = as_object(need(doc, "assignment", "solution document"), "'assignment'");
  for (auto it = assignment.begin(); it != assignment.end(); ++it) {
    out.solution.assignment[it.key()] = as_string(it.value(), "assignment target");
  }
  if (out.cost_term) out.solution.cost_term = *out.cost_term;
  if (out.access_term) out.solution.access_term = *out.access_term;
  if (out.objective) out.solution.objective = *out.objective;
  return out;
}

std::string sweep_to_csv(const std::vector<ParetoPoint>& points) {
  std::ostringstream out;
  out << "lambda,cost_term,access_term,objective,selected,status,saturated\n";
  for (const auto& pt : points) {
    out << num(pt.lambda) << ',';
    if (pt.status == SolveStatus::Optimal) {
      out << num(pt.cost_term) << ',' << num(pt.access_term) << ','
          << num(pt.solution.objective) << ',' << join(pt.solution.selected, ";") << ',';
    } else {
      out << ",,,,";
    }
    out << to_string(pt.status) << ',' << (pt.saturated ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string sweep_to_json(const std::vector<ParetoPoint>& points) {
  json arr = json::array();
  for (const auto& pt : points) {
    json row;
    row["lambda"] = pt.lambda;
    row["status"] = to_string(pt.status);
    row["saturated"] = pt.saturated;
    if (pt.status == SolveStatus::Optimal) {
      row["cost_term"] = pt.cost_term;
      row["access_term"] = pt.access_term;
      row["objective"] = pt.solution.objective;
      row["selected"] = pt.solution.selected;
    } else {
      row["error"] = pt.error;
    }
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

std::string trips_to_csv(const std::vector<TripRecord>& records) {
  std::ostringstream out;
  out << "vehicle,origin,origin_class,station,route,travel_time_s,distance_m,"
         "traction_energy_wh,regen_energy_wh,net_energy_wh,final_soc,battery_depleted\n";
  for (const auto& r : records) {
    out << r.vehicle << ',' << r.origin << ',' << to_string(r.origin_class) << ',' << r.station
        << ',' << join(r.route, "|") << ',' << num(r.travel_time_s) << ',' << num(r.distance_m)
        << ',' << num(r.traction_energy_wh) << ',' << num(r.regen_energy_wh) << ','
        << num(r.net_energy_wh) << ',' << num(r.final_soc) << ','
        << (r.battery_depleted ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string trips_to_json(const std::vector<TripRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    json row;
    row["vehicle"] = r.vehicle;
    row["origin"] = r.origin;
    row["origin_class"] = to_string(r.origin_class);
    row["station"] = r.station;
    row["route"] = r.route;
    row["travel_time_s"] = r.travel_time_s;
    row["distance_m"] = r.distance_m;
    row["traction_energy_wh"] = r.traction_energy_wh;
    row["regen_energy_wh"] = r.regen_energy_wh;
    row["net_energy_wh"] = r.net_energy_wh;
    row["final_soc"] = r.final_soc;
    row["battery_depleted"] = r.battery_depleted;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  out << "lambda,route,travel_time_s,distance_m,energy_wh,trips\n";
  for (const auto& row : rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.3f,%.3f,%.4f", row.mean_travel_time_s, row.mean_distance_m,
                  row.mean_net_energy_wh);
    out << row.label << ',' << row.route << ',' << buf << ',' << row.trip_count << '\n';
  }
  return out.str();
}

std::string metrics_to_json(const std::vector<MetricsRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json r;
    r["lambda"] = row.label;
    r["route"] = row.route;
    r["travel_time_s"] = row.mean_travel_time_s;
    r["distance_m"] = row.mean_distance_m;
    r["energy_wh"] = row.mean_net_energy_wh;
    r["trips"] = row.trip_count;
    arr.push_back(std::move(r));
  }
  return arr.dump(2) + "\n";
}

std::string variability_to_json(const VariabilityReport& report) {
  json doc;
  doc["std_a"] = report.std_a;
  doc["std_b"] = report.std_b;
  doc["cv_a"] = report.cv_a;
  doc["cv_b"] = report.cv_b;
  doc["relative_change"] = report.relative_change;  // nonfinite renders as null
  return doc.dump(2) + "\n";
}

std::vector<AccessReportRow> access_report(const Scenario& scn) {
  AccessibilityProfile fallback;
  const AccessibilityProfile* profile = scn.profile ? &*scn.profile : nullptr;
  if (profile == nullptr) {
    try {
      fallback = built_default_profile(scn.network);
      validate_profile(fallback, scn.network);
    } catch (const Error& e) {
      throw ParseError(std::string("access report needs a usable profile: ") + e.what());
    }
    profile = &fallback;
  }
  std::vector<const DemandPoint*> demands;
  demands.reserve(scn.instance.demand_points.size());
  for (const auto& dp : scn.instance.demand_points) demands.push_back(&dp);
  std::sort(demands.begin(), demands.end(),
            [](const DemandPoint* a, const DemandPoint* b) { return a->id < b->id; });
  std::map<std::string, double> kappa_of;
  for (const DemandPoint* dp : demands) kappa_of.emplace(dp->node, dp->kappa);

  std::vector<std::string> nodes = scn.network.node_ids();
  std::sort(nodes.begin(), nodes.end());
  std::vector<AccessReportRow> rows;
  rows.reserve(nodes.size());
  for (const auto& node : nodes) {
    AccessReportRow row;
    row.node = node;
    auto it = kappa_of.find(node);
    row.kappa = it == kappa_of.end() ? 0.0 : it->second;
    row.epsilon = mobility_index(scn.network, node, *profile, row.kappa).epsilon;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string access_report_to_csv(const std::vector<AccessReportRow>& rows, double mem) {
  std::ostringstream out;
  out << "node,kappa,epsilon\n";
  for (const auto& row : rows) {
    out << row.node << ',' << num(row.kappa) << ',' << num(row.epsilon) << '\n';
  }
  out << "mem_score,," << num(mem) << '\n';
  return out.str();
}

std::string access_report_to_json(const std::vector<AccessReportRow>& rows, double mem) {
  json doc;
  json arr = json::array();
  for (const auto& row : rows) {
    arr.push_back({{"node", row.node}, {"kappa", row.kappa}, {"epsilon", row.epsilon}});
  }
  doc["nodes"] = arr;
  doc["mem_score"] = mem;
  return doc.dump(2) + "\n";
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open for writing: " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

std::string lambda_label(double lambda) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", lambda);
  return buf;
}

}  // namespace evplace
