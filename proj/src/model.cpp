#include "evplace/model.hpp"

#include <algorithm>
#include <set>

#include "evplace/errors.hpp"

namespace evplace {

void validate_instance(const PlacementInstance& inst) {
  std::set<std::string> ids;
  for (const auto& d : inst.demand_points) {
    if (d.id.empty()) throw Error("demand point with empty id");
    if (!ids.insert(d.id).second) throw Error("duplicate demand id: " + d.id);
    if (d.weight < 1) throw Error("demand " + d.id + " must have integer weight >= 1");
    if (d.kappa < 0.0) throw Error("demand " + d.id + " must have nonnegative kappa");
    if (d.access_score < 0.0) throw Error("demand " + d.id + " must have a nonnegative access score");
  }
  ids.clear();
  for (const auto& s : inst.stations) {
    if (s.id.empty()) throw Error("station with empty id");
    if (!ids.insert(s.id).second) throw Error("duplicate station id: " + s.id);
    if (s.capacity < 1) throw Error("station " + s.id + " must have integer capacity >= 1");
    if (s.access_score < 0.0) throw Error("station " + s.id + " must have a nonnegative access score");
  }
  if (inst.cost.rows() != inst.demand_points.size() || inst.cost.cols() != inst.stations.size()) {
    throw Error("cost matrix must be |demand| x |stations|");
  }
  for (std::size_t r = 0; r < inst.cost.rows(); ++r) {
    for (std::size_t c = 0; c < inst.cost.cols(); ++c) {
      if (!inst.cost.forbidden(r, c) && inst.cost.at(r, c) < 0.0) {
        throw Error("assignment costs must be nonnegative");
      }
    }
  }
  if (inst.lambda < 0.0) throw Error("lambda must be nonnegative");
  if (inst.p < 0 || inst.p > static_cast<int>(inst.stations.size())) {
    throw Error("p must lie in [0, |stations|]");
  }
}

std::map<std::string, std::size_t> demand_index_map(const PlacementInstance& inst) {
  std::map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < inst.demand_points.size(); ++i) m[inst.demand_points[i].id] = i;
  return m;
}

std::map<std::string, std::size_t> station_index_map(const PlacementInstance& inst) {
  std::map<std::string, std::size_t> m;
  for (std::size_t j = 0; j < inst.stations.size(); ++j) m[inst.stations[j].id] = j;
  return m;
}

double access_weight(const PlacementInstance& inst, std::size_t demand_idx,
                     std::size_t station_idx) {
  return inst.access_indexing == AccessIndexing::Station
             ? inst.stations[station_idx].access_score
             : inst.demand_points[demand_idx].access_score;
}

ObjectiveBreakdown objective_value(const PlacementInstance& inst, const PlacementSolution& sol) {
  auto dmap = demand_index_map(inst);
  auto smap = station_index_map(inst);
  std::set<std::string> selected(sol.selected.begin(), sol.selected.end());
  for (const auto& id : sol.selected) {
    if (smap.find(id) == smap.end()) {
      throw InconsistentSolutionError("selected station not in instance: " + id);
    }
  }
  ObjectiveBreakdown out;
  for (const auto& [demand_id, station_id] : sol.assignment) {
    auto dit = dmap.find(demand_id);
    if (dit == dmap.end()) {
      throw InconsistentSolutionError("assignment references unknown demand: " + demand_id);
    }
    auto sit = smap.find(station_id);
    if (sit == smap.end()) {
      throw InconsistentSolutionError("assignment references unknown station: " + station_id);
    }
    if (selected.find(station_id) == selected.end()) {
      throw InconsistentSolutionError("assignment " + demand_id + " -> " + station_id +
                                      " targets a non-selected station");
    }
    std::size_t i = dit->second;
    std::size_t j = sit->second;
    if (inst.cost.forbidden(i, j)) {
      throw InconsistentSolutionError("assignment " + demand_id + " -> " + station_id +
                                      " uses a forbidden pair");
    }
    out.cost_term += inst.demand_points[i].weight * inst.cost.at(i, j);
    out.access_term += access_weight(inst, i, j);
  }
  out.objective = out.cost_term - inst.lambda * out.access_term;
  return out;
}

std::vector<Violation> validate_solution(const PlacementInstance& inst,
                                         const PlacementSolution& sol) {
  std::vector<Violation> v;
  auto dmap = demand_index_map(inst);
  auto smap = station_index_map(inst);

  std::set<std::string> selected;
  for (const auto& id : sol.selected) {
    if (smap.find(id) == smap.end()) {
      v.push_back({0, "selected station not in instance: " + id});
      continue;
    }
    if (!selected.insert(id).second) {
      v.push_back({0, "station selected twice: " + id});
    }
  }
  if (static_cast<int>(selected.size()) != inst.p) {
    v.push_back({2, "selected " + std::to_string(selected.size()) + " stations, expected p = " +
                        std::to_string(inst.p)});
  }

  std::map<std::string, long long> load;
  for (const auto& [demand_id, station_id] : sol.assignment) {
    auto dit = dmap.find(demand_id);
    if (dit == dmap.end()) {
      v.push_back({0, "assignment references unknown demand: " + demand_id});
      continue;
    }
    auto sit = smap.find(station_id);
    if (sit == smap.end()) {
      v.push_back({0, "assignment references unknown station: " + station_id});
      continue;
    }
    if (selected.find(station_id) == selected.end()) {
      v.push_back({3, "demand " + demand_id + " assigned to non-selected station " + station_id});
    }
    if (inst.cost.forbidden(dit->second, sit->second)) {
      v.push_back({0, "assignment " + demand_id + " -> " + station_id + " uses a forbidden pair"});
    }
    load[station_id] += inst.demand_points[dit->second].weight;
  }

  for (const auto& d : inst.demand_points) {
    if (sol.assignment.find(d.id) == sol.assignment.end()) {
      v.push_back({1, "demand " + d.id + " is unassigned"});
    }
  }

  for (const auto& [station_id, l] : load) {
    auto sit = smap.find(station_id);
    if (sit == smap.end()) continue;
    long long capacity =
        selected.count(station_id) ? inst.stations[sit->second].capacity : 0;  // s_j * y_j
    if (l > capacity) {
      v.push_back({4, "station " + station_id + " carries load " + std::to_string(l) +
                          " over capacity " + std::to_string(capacity)});
    }
  }

  long long total_demand = 0;
  for (const auto& d : inst.demand_points) total_demand += d.weight;
  long long selected_capacity = 0;
  for (const auto& id : selected) {
    auto sit = smap.find(id);
    if (sit != smap.end()) selected_capacity += inst.stations[sit->second].capacity;
  }
  if (selected_capacity < total_demand) {
    v.push_back({5, "selected capacity " + std::to_string(selected_capacity) +
                        " cannot cover total demand " + std::to_string(total_demand)});
  }
  return v;
}

FeasibilityCheck check_feasibility_condition(const PlacementInstance& inst) {
  FeasibilityCheck out;
  for (const auto& d : inst.demand_points) out.total_demand += d.weight;
  std::vector<long long> caps;
  for (const auto& s : inst.stations) {
    out.total_capacity += s.capacity;
    caps.push_back(s.capacity);
  }
  out.feasible_hint = out.total_capacity >= out.total_demand;
  std::sort(caps.rbegin(), caps.rend());
  long long top = 0;
  for (int j = 0; j < inst.p && j < static_cast<int>(caps.size()); ++j) top += caps[j];
  out.top_p_covers = top >= out.total_demand;
  return out;
}

UniformReduction detect_uniform_reduction(const PlacementInstance& inst) {
  std::vector<double> scores;
  if (inst.access_indexing == AccessIndexing::Station) {
    for (const auto& s : inst.stations) scores.push_back(s.access_score);
  } else {
    for (const auto& d : inst.demand_points) scores.push_back(d.access_score);
  }
  UniformReduction out;
  if (scores.empty()) {
    out.uniform = true;
    return out;
  }
  auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  if (*hi - *lo > 1e-12) return out;
  out.uniform = true;
  double sum = 0.0;
  for (double s : scores) sum += s;
  out.mean_score = sum / static_cast<double>(scores.size());
  out.offset = inst.lambda * out.mean_score * static_cast<double>(inst.demand_points.size());
  return out;
}

AccessDegeneracy access_term_degeneracy(const PlacementInstance& inst) {
  AccessDegeneracy out;
  if (inst.access_indexing != AccessIndexing::Demand) return out;
  out.constant = true;
  for (const auto& d : inst.demand_points) out.value += d.access_score;
  return out;
}

}  // namespace evplace
