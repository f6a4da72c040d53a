#pragma once

// Shared fixtures and independent reference implementations for the tests.
// Reference results here are computed by direct enumeration (all simple
// paths, Floyd-Warshall, full assignment cross products) so they do not share
// code paths with the library.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evplace/access.hpp"
#include "evplace/model.hpp"
#include "evplace/network.hpp"

namespace testsupport {

using namespace evplace;

constexpr double kInf = std::numeric_limits<double>::infinity();

// -------------------------------------------------------------------------
// Fixed fixtures

// A -> B -> D and A -> C -> D diamond; drive at 10 m/s; hospitals at B and D.
inline NetworkDef diamond_def() {
  NetworkDef def;
  def.nodes = {"A", "B", "C", "D"};
  def.edges = {{"A", "B", 100.0, false},
               {"B", "D", 100.0, false},
               {"A", "C", 150.0, false},
               {"C", "D", 40.0, false}};
  def.modes["drive"] = {10.0, 0.5, 60.0};
  def.services = {{"B", "hospital"}, {"D", "hospital"}};
  return def;
}

inline RoadNetwork diamond_network() { return RoadNetwork(diamond_def()); }

// Two demand points, cheap low-access station vs expensive high-access one.
inline PlacementInstance e1_instance(double lambda) {
  PlacementInstance inst;
  inst.demand_points = {{"i1", "a", 1, 0.0, 0.0}, {"i2", "a", 1, 0.0, 0.0}};
  inst.stations = {{"j1", "b", 2, 1.0}, {"j2", "c", 2, 4.0}};
  CostMatrix cm(2, 2);
  cm.set(0, 0, 1.0);
  cm.set(0, 1, 3.0);
  cm.set(1, 0, 1.0);
  cm.set(1, 1, 3.0);
  inst.cost = cm;
  inst.lambda = lambda;
  inst.p = 1;
  return inst;
}

// -------------------------------------------------------------------------
// Path oracles (straight from a NetworkDef, never through RoadNetwork)

struct DirectedEdge {
  int from;
  int to;
  double length;
};

inline std::vector<std::string> def_nodes_sorted(const NetworkDef& def) {
  std::vector<std::string> nodes = def.nodes;
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

inline std::vector<DirectedEdge> expand_edges(const NetworkDef& def,
                                              const std::vector<std::string>& nodes) {
  auto index = [&](const std::string& id) {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  std::vector<DirectedEdge> out;
  for (const auto& e : def.edges) {
    out.push_back({index(e.from), index(e.to), e.length_m});
    if (e.bidirectional) out.push_back({index(e.to), index(e.from), e.length_m});
  }
  return out;
}

// All-pairs shortest distances by Floyd-Warshall.
inline std::vector<std::vector<double>> fw_distances(const NetworkDef& def) {
  const auto nodes = def_nodes_sorted(def);
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (int i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : expand_edges(def, nodes)) {
    d[e.from][e.to] = std::min(d[e.from][e.to], e.length);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

inline double fw_distance(const NetworkDef& def, const std::string& from, const std::string& to) {
  const auto nodes = def_nodes_sorted(def);
  auto index = [&](const std::string& id) {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  return fw_distances(def)[index(from)][index(to)];
}

// Every simple path between two nodes, as (node sequence, total length).
inline std::vector<std::pair<std::vector<std::string>, double>> all_simple_paths(
    const NetworkDef& def, const std::string& from, const std::string& to) {
  const auto nodes = def_nodes_sorted(def);
  const auto edges = expand_edges(def, nodes);
  auto index = [&](const std::string& id) {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  std::vector<std::pair<std::vector<std::string>, double>> found;
  std::vector<int> path{index(from)};
  std::vector<bool> visited(nodes.size(), false);
  visited[static_cast<std::size_t>(index(from))] = true;
  const int target = index(to);

  std::function<void(double)> walk = [&](double length) {
    int cur = path.back();
    if (cur == target) {
      std::vector<std::string> ids;
      for (int i : path) ids.push_back(nodes[static_cast<std::size_t>(i)]);
      found.push_back({std::move(ids), length});
      return;
    }
    for (const auto& e : edges) {
      if (e.from != cur || visited[static_cast<std::size_t>(e.to)]) continue;
      visited[static_cast<std::size_t>(e.to)] = true;
      path.push_back(e.to);
      walk(length + e.length);
      path.pop_back();
      visited[static_cast<std::size_t>(e.to)] = false;
    }
  };
  walk(0.0);
  return found;
}

// -------------------------------------------------------------------------
// Mobility-index oracle: Definition-style direct evaluation over FW times.

inline double mi_oracle(const NetworkDef& def, const std::string& node,
                        const AccessibilityProfile& profile, double kappa) {
  const auto nodes = def_nodes_sorted(def);
  auto index = [&](const std::string& id) {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  const auto dist = fw_distances(def);
  const int origin = index(node);

  std::map<std::string, int> in_network;
  for (const auto& poi : def.services) in_network[poi.service_type] += 1;

  double epsilon = 0.0;
  for (const auto& mode : profile.modes) {
    double speed = def.modes.at(mode.mode).speed_mps;
    double inner = 0.0;
    for (const auto& svc : profile.service_types) {
      int count = 0;
      for (const auto& poi : def.services) {
        if (poi.service_type != svc.service_type) continue;
        double t = dist[origin][index(poi.node)] / speed;
        if (t <= mode.tau_s) count += 1;
      }
      int norm;
      auto it = profile.normalization.find(svc.service_type);
      if (it != profile.normalization.end()) {
        norm = it->second;
      } else {
        auto in_it = in_network.find(svc.service_type);
        norm = in_it != in_network.end() && in_it->second > 0 ? in_it->second : 1;
      }
      double sigma = std::min(static_cast<double>(count) / static_cast<double>(norm), 1.0);
      inner += svc.beta * sigma;
    }
    epsilon += std::exp(-kappa * mode.cost_per_mile) * inner;
  }
  return epsilon;
}

// -------------------------------------------------------------------------
// Placement plan enumeration: the full cross product of station subsets and
// capacity-respecting assignments, with per-plan sums accumulated in demand
// id order. No pruning anywhere.

struct Plan {
  std::vector<std::string> selected;  // ascending station ids
  std::vector<std::string> assign;    // station id per demand, demand ids ascending
  double cost = 0.0;
  double access = 0.0;
};

inline std::vector<Plan> enumerate_feasible_plans(const PlacementInstance& inst) {
  std::vector<std::size_t> demand_order(inst.demand_points.size());
  for (std::size_t i = 0; i < demand_order.size(); ++i) demand_order[i] = i;
  std::sort(demand_order.begin(), demand_order.end(), [&](std::size_t a, std::size_t b) {
    return inst.demand_points[a].id < inst.demand_points[b].id;
  });
  std::vector<std::size_t> station_order(inst.stations.size());
  for (std::size_t j = 0; j < station_order.size(); ++j) station_order[j] = j;
  std::sort(station_order.begin(), station_order.end(), [&](std::size_t a, std::size_t b) {
    return inst.stations[a].id < inst.stations[b].id;
  });

  const std::size_t nj = inst.stations.size();
  const std::size_t ni = inst.demand_points.size();
  std::vector<Plan> plans;

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nj); ++mask) {
    if (static_cast<int>(__builtin_popcountll(mask)) != inst.p) continue;
    std::vector<std::size_t> open;  // positions into station_order
    for (std::size_t pos = 0; pos < nj; ++pos) {
      if (mask & (std::uint64_t{1} << pos)) open.push_back(pos);
    }
    Plan base;
    for (std::size_t pos : open) base.selected.push_back(inst.stations[station_order[pos]].id);

    std::vector<long long> rem;
    for (std::size_t pos : open) rem.push_back(inst.stations[station_order[pos]].capacity);
    std::vector<std::size_t> choice(ni, 0);

    std::function<void(std::size_t, double, double)> assign = [&](std::size_t k, double cost,
                                                                  double access) {
      if (k == ni) {
        Plan plan = base;
        plan.cost = cost;
        plan.access = access;
        for (std::size_t i = 0; i < ni; ++i) {
          plan.assign.push_back(inst.stations[station_order[open[choice[i]]]].id);
        }
        plans.push_back(std::move(plan));
        return;
      }
      std::size_t di = demand_order[k];
      const DemandPoint& d = inst.demand_points[di];
      for (std::size_t c = 0; c < open.size(); ++c) {
        std::size_t sj = station_order[open[c]];
        if (inst.cost.forbidden(di, sj)) continue;
        if (rem[c] < d.weight) continue;
        rem[c] -= d.weight;
        choice[k] = c;
        assign(k + 1, cost + d.weight * inst.cost.at(di, sj),
               access + access_weight(inst, di, sj));
        rem[c] += d.weight;
      }
    };
    assign(0, 0.0, 0.0);
  }
  return plans;
}

// Reference argmin of cost - lambda * access under the documented tie rule.
inline const Plan* best_plan(const std::vector<Plan>& plans, double lambda) {
  const Plan* best = nullptr;
  double best_obj = 0.0;
  for (const auto& p : plans) {
    double obj = p.cost - lambda * p.access;
    if (best == nullptr || obj < best_obj ||
        (obj == best_obj && (p.selected < best->selected ||
                             (p.selected == best->selected && p.assign < best->assign)))) {
      best = &p;
      best_obj = obj;
    }
  }
  return best;
}

// Reference access-maximizing plan: max access, then min cost, then tie rule.
inline const Plan* max_access_plan(const std::vector<Plan>& plans) {
  const Plan* best = nullptr;
  for (const auto& p : plans) {
    if (best == nullptr || p.access > best->access ||
        (p.access == best->access &&
         (p.cost < best->cost ||
          (p.cost == best->cost && (p.selected < best->selected ||
                                    (p.selected == best->selected && p.assign < best->assign)))))) {
      best = &p;
    }
  }
  return best;
}

// Smallest lambda beyond which the scalarized argmin must coincide with the
// access-maximizing plan: max over plans of (cost* - cost) / (access* - access)
// for plans with strictly smaller access, where * is the access-max plan.
inline double crossover_lambda(const std::vector<Plan>& plans) {
  const Plan* star = max_access_plan(plans);
  double crossover = 0.0;
  for (const auto& p : plans) {
    if (p.access >= star->access) continue;
    double ratio = (star->cost - p.cost) / (star->access - p.access);
    crossover = std::max(crossover, ratio);
  }
  return crossover;
}

// -------------------------------------------------------------------------
// Random generators (integer-valued data so comparisons are exact)

struct RandomInstanceOptions {
  int max_demands = 6;
  int max_stations = 5;
  bool unit_demands = false;
  bool ensure_cover = false;     // raise capacities until C >= D
  bool uniform_scores = false;   // one shared station score
  bool demand_indexing = false;
  double lambda = 0.0;
};

inline PlacementInstance random_instance(std::mt19937_64& rng,
                                         const RandomInstanceOptions& opt = {}) {
  PlacementInstance inst;
  const int ni = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_demands - 1));
  const int nj = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_stations - 1));
  const double shared_score = static_cast<double>(rng() % 6);
  for (int i = 0; i < ni; ++i) {
    DemandPoint d;
    char id[16];
    std::snprintf(id, sizeof(id), "i%02d", i);
    d.id = id;
    d.node = "x";
    d.weight = opt.unit_demands ? 1 : 1 + static_cast<int>(rng() % 3);
    d.access_score = static_cast<double>(rng() % 6);
    inst.demand_points.push_back(std::move(d));
  }
  for (int j = 0; j < nj; ++j) {
    Station s;
    char id[16];
    std::snprintf(id, sizeof(id), "j%02d", j);
    s.id = id;
    s.node = "x";
    s.capacity = 1 + static_cast<int>(rng() % 6);
    s.access_score = opt.uniform_scores ? shared_score : static_cast<double>(rng() % 6);
    inst.stations.push_back(std::move(s));
  }
  CostMatrix cm(static_cast<std::size_t>(ni), static_cast<std::size_t>(nj));
  for (int i = 0; i < ni; ++i) {
    for (int j = 0; j < nj; ++j) {
      cm.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
             static_cast<double>(rng() % 21));
    }
  }
  inst.cost = cm;
  inst.p = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(nj));
  inst.lambda = opt.lambda;
  if (opt.demand_indexing) inst.access_indexing = AccessIndexing::Demand;
  if (opt.ensure_cover) {
    long long demand = 0;
    for (const auto& d : inst.demand_points) demand += d.weight;
    long long cap = 0;
    for (const auto& s : inst.stations) cap += s.capacity;
    while (cap < demand) {
      inst.stations[rng() % static_cast<std::uint64_t>(nj)].capacity += 1;
      cap += 1;
    }
  }
  return inst;
}

// Connected random road network with services, for access and trip tests.
inline NetworkDef random_network_def(std::mt19937_64& rng, int n_nodes, int n_modes,
                                     int n_service_types) {
  NetworkDef def;
  for (int i = 0; i < n_nodes; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "n%02d", i);
    def.nodes.push_back(id);
  }
  for (int i = 0; i + 1 < n_nodes; ++i) {
    def.edges.push_back(
        {def.nodes[static_cast<std::size_t>(i)], def.nodes[static_cast<std::size_t>(i + 1)],
         static_cast<double>(50 + 10 * (rng() % 30)), true});
  }
  const int extras = n_nodes / 2;
  for (int e = 0; e < extras; ++e) {
    int a = static_cast<int>(rng() % static_cast<std::uint64_t>(n_nodes));
    int b = static_cast<int>(rng() % static_cast<std::uint64_t>(n_nodes));
    if (a == b) continue;
    def.edges.push_back({def.nodes[static_cast<std::size_t>(a)],
                         def.nodes[static_cast<std::size_t>(b)],
                         static_cast<double>(50 + 10 * (rng() % 30)), rng() % 2 == 0});
  }
  const double speeds[] = {5.0, 10.0, 15.0, 20.0};
  const double costs[] = {0.0, 0.5, 1.0, 2.0};
  const double taus[] = {30.0, 60.0, 120.0, 300.0};
  for (int m = 0; m < n_modes; ++m) {
    char id[16];
    std::snprintf(id, sizeof(id), "m%d", m);
    def.modes[id] = {speeds[rng() % 4], costs[rng() % 4], taus[rng() % 4]};
  }
  for (int i = 0; i < n_nodes; ++i) {
    if (rng() % 5 < 2) {
      char type[16];
      std::snprintf(type, sizeof(type), "t%d",
                    static_cast<int>(rng() % static_cast<std::uint64_t>(n_service_types)));
      def.services.push_back({def.nodes[static_cast<std::size_t>(i)], type});
    }
  }
  return def;
}

inline AccessibilityProfile random_profile(std::mt19937_64& rng, const NetworkDef& def,
                                           int n_service_types) {
  AccessibilityProfile profile;
  for (const auto& [id, spec] : def.modes) profile.modes.push_back({id, spec.cost_per_mile, spec.tau_s});
  for (int t = 0; t < n_service_types; ++t) {
    char id[16];
    std::snprintf(id, sizeof(id), "t%d", t);
    profile.service_types.push_back({id, static_cast<double>(1 + rng() % 3)});
    if (rng() % 3 == 0) profile.normalization[id] = 1 + static_cast<int>(rng() % 4);
  }
  return profile;
}

// -------------------------------------------------------------------------
// Subprocess helper for CLI round trips

struct CmdResult {
  int exit_code = -1;
  std::string output;
};

inline CmdResult run_cmd(const std::string& cmd) {
  CmdResult result;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string slurp(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (f == nullptr) return {};
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, got);
  std::fclose(f);
  return out;
}

}  // namespace testsupport
