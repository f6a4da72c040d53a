#include "evplace/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

#include "evplace/errors.hpp"

namespace evplace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Ordering {
  std::vector<std::size_t> demands;   // instance indices, ascending id
  std::vector<std::size_t> stations;  // instance indices, ascending id
};

Ordering make_ordering(const PlacementInstance& inst) {
  Ordering ord;
  ord.demands.resize(inst.demand_points.size());
  std::iota(ord.demands.begin(), ord.demands.end(), std::size_t{0});
  std::sort(ord.demands.begin(), ord.demands.end(), [&](std::size_t a, std::size_t b) {
    return inst.demand_points[a].id < inst.demand_points[b].id;
  });
  ord.stations.resize(inst.stations.size());
  std::iota(ord.stations.begin(), ord.stations.end(), std::size_t{0});
  std::sort(ord.stations.begin(), ord.stations.end(), [&](std::size_t a, std::size_t b) {
    return inst.stations[a].id < inst.stations[b].id;
  });
  return ord;
}

enum class Objective { Scalarized, CostOnly, AccessMax };

// One station subset viewed with demands and stations in id order, so that
// assignment vectors enumerate lexicographically.
struct Subproblem {
  const PlacementInstance* inst = nullptr;
  const Ordering* ord = nullptr;
  std::vector<std::size_t> subset;  // positions into ord->stations, ascending
  Objective objective = Objective::Scalarized;

  std::size_t demand_count() const { return ord->demands.size(); }
  std::size_t station_count() const { return subset.size(); }
  std::size_t demand_index(std::size_t k) const { return ord->demands[k]; }
  std::size_t station_index(std::size_t pos) const { return ord->stations[subset[pos]]; }
  const DemandPoint& demand(std::size_t k) const { return inst->demand_points[demand_index(k)]; }
  const Station& station(std::size_t pos) const { return inst->stations[station_index(pos)]; }

  bool allowed(std::size_t k, std::size_t pos) const {
    if (inst->cost.forbidden(demand_index(k), station_index(pos))) return false;
    return station(pos).capacity >= demand(k).weight;
  }
  double pair_cost(std::size_t k, std::size_t pos) const {
    return demand(k).weight * inst->cost.at(demand_index(k), station_index(pos));
  }
  double pair_access(std::size_t k, std::size_t pos) const {
    return access_weight(*inst, demand_index(k), station_index(pos));
  }
  double pair_weight(std::size_t k, std::size_t pos) const {
    double w = pair_cost(k, pos);
    if (objective == Objective::Scalarized) w -= inst->lambda * pair_access(k, pos);
    return w;
  }
};

struct InnerSolution {
  bool feasible = false;
  std::vector<int> pick;  // station position per demand slot (id order)
  double weight = 0.0;
  double cost = 0.0;
  double access = 0.0;
};

InnerSolution finish_inner(const Subproblem& sp, const std::vector<int>& pick) {
  InnerSolution out;
  out.feasible = true;
  out.pick = pick;
  for (std::size_t k = 0; k < pick.size(); ++k) {
    std::size_t pos = static_cast<std::size_t>(pick[k]);
    out.weight += sp.pair_weight(k, pos);
    out.cost += sp.pair_cost(k, pos);
    out.access += sp.pair_access(k, pos);
  }
  return out;
}

// Depth-first branch and bound over assignment vectors in lexicographic
// order. Pruning on >= cannot displace an earlier equal-weight optimum, so
// the first (lexicographically smallest) one is kept.
class MinWeightSearch {
 public:
  explicit MinWeightSearch(const Subproblem& sp) : sp_(sp) {}

  InnerSolution run() {
    const std::size_t n = sp_.demand_count();
    const std::size_t m = sp_.station_count();
    rem_.resize(m);
    rem_total_ = 0;
    for (std::size_t pos = 0; pos < m; ++pos) {
      rem_[pos] = sp_.station(pos).capacity;
      rem_total_ += rem_[pos];
    }
    suffix_min_.assign(n + 1, 0.0);
    suffix_demand_.assign(n + 1, 0);
    for (std::size_t k = n; k-- > 0;) {
      double cheapest = kInf;
      for (std::size_t pos = 0; pos < m; ++pos) {
        if (sp_.allowed(k, pos)) cheapest = std::min(cheapest, sp_.pair_weight(k, pos));
      }
      if (cheapest == kInf) return {};  // this demand fits nowhere in the subset
      suffix_min_[k] = suffix_min_[k + 1] + cheapest;
      suffix_demand_[k] = suffix_demand_[k + 1] + sp_.demand(k).weight;
    }
    pick_.assign(n, -1);
    dfs(0, 0.0);
    if (!found_) return {};
    return finish_inner(sp_, best_pick_);
  }

 private:
  void dfs(std::size_t k, double cur) {
    if (cur + suffix_min_[k] >= best_weight_) return;
    if (k == sp_.demand_count()) {
      best_weight_ = cur;
      best_pick_ = pick_;
      found_ = true;
      return;
    }
    if (suffix_demand_[k] > rem_total_) return;
    const int d = sp_.demand(k).weight;
    for (std::size_t pos = 0; pos < sp_.station_count(); ++pos) {
      if (!sp_.allowed(k, pos) || rem_[pos] < d) continue;
      rem_[pos] -= d;
      rem_total_ -= d;
      pick_[k] = static_cast<int>(pos);
      dfs(k + 1, cur + sp_.pair_weight(k, pos));
      pick_[k] = -1;
      rem_[pos] += d;
      rem_total_ += d;
    }
  }

  const Subproblem& sp_;
  std::vector<long long> rem_;
  long long rem_total_ = 0;
  std::vector<double> suffix_min_;
  std::vector<long long> suffix_demand_;
  std::vector<int> pick_;
  std::vector<int> best_pick_;
  double best_weight_ = kInf;
  bool found_ = false;
};

// Lexicographic (max access, then min cost) search. Bounding only on the
// access side; equal-access branches stay open for the cost tie-break.
class AccessMaxSearch {
 public:
  explicit AccessMaxSearch(const Subproblem& sp) : sp_(sp) {}

  InnerSolution run() {
    const std::size_t n = sp_.demand_count();
    const std::size_t m = sp_.station_count();
    rem_.resize(m);
    rem_total_ = 0;
    for (std::size_t pos = 0; pos < m; ++pos) {
      rem_[pos] = sp_.station(pos).capacity;
      rem_total_ += rem_[pos];
    }
    suffix_max_.assign(n + 1, 0.0);
    suffix_demand_.assign(n + 1, 0);
    for (std::size_t k = n; k-- > 0;) {
      double richest = -kInf;
      for (std::size_t pos = 0; pos < m; ++pos) {
        if (sp_.allowed(k, pos)) richest = std::max(richest, sp_.pair_access(k, pos));
      }
      if (richest == -kInf) return {};
      suffix_max_[k] = suffix_max_[k + 1] + richest;
      suffix_demand_[k] = suffix_demand_[k + 1] + sp_.demand(k).weight;
    }
    pick_.assign(n, -1);
    dfs(0, 0.0, 0.0);
    if (!found_) return {};
    return finish_inner(sp_, best_pick_);
  }

 private:
  void dfs(std::size_t k, double access, double cost) {
    if (found_ && access + suffix_max_[k] < best_access_) return;
    if (k == sp_.demand_count()) {
      if (!found_ || access > best_access_ || (access == best_access_ && cost < best_cost_)) {
        best_access_ = access;
        best_cost_ = cost;
        best_pick_ = pick_;
        found_ = true;
      }
      return;
    }
    if (suffix_demand_[k] > rem_total_) return;
    const int d = sp_.demand(k).weight;
    for (std::size_t pos = 0; pos < sp_.station_count(); ++pos) {
      if (!sp_.allowed(k, pos) || rem_[pos] < d) continue;
      rem_[pos] -= d;
      rem_total_ -= d;
      pick_[k] = static_cast<int>(pos);
      dfs(k + 1, access + sp_.pair_access(k, pos), cost + sp_.pair_cost(k, pos));
      pick_[k] = -1;
      rem_[pos] += d;
      rem_total_ += d;
    }
  }

  const Subproblem& sp_;
  std::vector<long long> rem_;
  long long rem_total_ = 0;
  std::vector<double> suffix_max_;
  std::vector<long long> suffix_demand_;
  std::vector<int> pick_;
  std::vector<int> best_pick_;
  double best_access_ = -kInf;
  double best_cost_ = kInf;
  bool found_ = false;
};

// Small successive-shortest-paths network; Bellman-Ford tolerates the
// negative arc costs lambda introduces.
struct FlowGraph {
  struct Arc {
    int to;
    int cap;
    double cost;
    int rev;
  };
  std::vector<std::vector<Arc>> g;

  explicit FlowGraph(int nodes) : g(nodes) {}

  void add(int u, int v, int cap, double cost) {
    g[u].push_back({v, cap, cost, static_cast<int>(g[v].size())});
    g[v].push_back({u, 0, -cost, static_cast<int>(g[u].size()) - 1});
  }

  std::optional<double> min_cost_flow(int s, int t, int units) {
    double total = 0.0;
    const int n = static_cast<int>(g.size());
    while (units > 0) {
      std::vector<double> dist(n, kInf);
      std::vector<int> pv(n, -1), pe(n, -1);
      dist[s] = 0.0;
      for (int round = 0; round < n; ++round) {
        bool changed = false;
        for (int u = 0; u < n; ++u) {
          if (dist[u] == kInf) continue;
          for (int a = 0; a < static_cast<int>(g[u].size()); ++a) {
            const Arc& arc = g[u][a];
            if (arc.cap <= 0) continue;
            if (dist[u] + arc.cost < dist[arc.to]) {
              dist[arc.to] = dist[u] + arc.cost;
              pv[arc.to] = u;
              pe[arc.to] = a;
              changed = true;
            }
          }
        }
        if (!changed) break;
      }
      if (dist[t] == kInf) return std::nullopt;
      for (int v = t; v != s; v = pv[v]) {
        Arc& a = g[pv[v]][pe[v]];
        a.cap -= 1;
        g[v][a.rev].cap += 1;
      }
      total += dist[t];
      units -= 1;
    }
    return total;
  }
};

std::optional<double> unit_assignment_optimum(const Subproblem& sp, std::size_t start,
                                              const std::vector<int>& rem) {
  const std::size_t n = sp.demand_count();
  const std::size_t m = sp.station_count();
  const int pending = static_cast<int>(n - start);
  if (pending == 0) return 0.0;
  const int source = 0;
  const int sink = 1 + pending + static_cast<int>(m);
  FlowGraph g(sink + 1);
  for (std::size_t k = start; k < n; ++k) {
    g.add(source, 1 + static_cast<int>(k - start), 1, 0.0);
  }
  for (std::size_t k = start; k < n; ++k) {
    for (std::size_t pos = 0; pos < m; ++pos) {
      if (!sp.allowed(k, pos)) continue;
      g.add(1 + static_cast<int>(k - start), 1 + pending + static_cast<int>(pos), 1,
            sp.pair_weight(k, pos));
    }
  }
  for (std::size_t pos = 0; pos < m; ++pos) {
    if (rem[pos] > 0) g.add(1 + pending + static_cast<int>(pos), sink, rem[pos], 0.0);
  }
  return g.min_cost_flow(source, sink, pending);
}

InnerSolution solve_unit_mcf(const Subproblem& sp) {
  const std::size_t n = sp.demand_count();
  const std::size_t m = sp.station_count();
  std::vector<int> rem(m);
  for (std::size_t pos = 0; pos < m; ++pos) rem[pos] = sp.station(pos).capacity;
  auto total = unit_assignment_optimum(sp, 0, rem);
  if (!total) return {};
  const double target = *total;
  const double slack = 1e-9 * (1.0 + std::abs(target));
  // Pin assignments front to back so the reported optimum carries the
  // lexicographically smallest assignment vector among equal-weight optima.
  std::vector<int> pick(n, -1);
  double fixed = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t pos = 0; pos < m; ++pos) {
      if (!sp.allowed(k, pos) || rem[pos] < 1) continue;
      rem[pos] -= 1;
      auto rest = unit_assignment_optimum(sp, k + 1, rem);
      if (rest && std::abs(fixed + sp.pair_weight(k, pos) + *rest - target) <= slack) {
        pick[k] = static_cast<int>(pos);
        fixed += sp.pair_weight(k, pos);
        break;
      }
      rem[pos] += 1;
    }
    if (pick[k] < 0) throw Error("internal: flow optimum lost while pinning assignments");
  }
  return finish_inner(sp, pick);
}

InnerSolution solve_subset(const Subproblem& sp) {
  if (sp.objective == Objective::AccessMax) return AccessMaxSearch(sp).run();
  bool unit = true;
  for (std::size_t k = 0; k < sp.demand_count(); ++k) {
    if (sp.demand(k).weight != 1) {
      unit = false;
      break;
    }
  }
  if (unit) return solve_unit_mcf(sp);
  return MinWeightSearch(sp).run();
}

long long subset_count_capped(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    if (r > 4'000'000'000'000'000LL) return cap + 1;
    r = r * (n - k + i) / i;  // exact at each step: C(n-k+i, i)
    if (r > cap) return cap + 1;
  }
  return r;
}

PlacementSolution solve_mode(const PlacementInstance& inst, Objective objective,
                             const SolveOptions& opts) {
  validate_instance(inst);
  Ordering ord = make_ordering(inst);
  const int nj = static_cast<int>(inst.stations.size());
  if (subset_count_capped(nj, inst.p, opts.subset_limit) > opts.subset_limit) {
    throw SubsetLimitError("station subsets exceed the enumeration guard (" +
                           std::to_string(opts.subset_limit) + ")");
  }
  long long total_demand = 0;
  for (const auto& d : inst.demand_points) total_demand += d.weight;

  struct Incumbent {
    bool has = false;
    double key1 = 0.0;
    double key2 = 0.0;
    std::vector<std::string> selected;
    InnerSolution inner;
  } best;

  std::vector<std::size_t> comb(inst.p);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  while (true) {
    long long subset_capacity = 0;
    for (std::size_t pos : comb) {
      subset_capacity += inst.stations[ord.stations[pos]].capacity;
    }
    if (subset_capacity >= total_demand) {
      Subproblem sp{&inst, &ord, comb, objective};
      InnerSolution inner = solve_subset(sp);
      if (inner.feasible) {
        double key1 = 0.0;
        double key2 = 0.0;
        switch (objective) {
          case Objective::Scalarized:
            key1 = inner.cost - inst.lambda * inner.access;
            break;
          case Objective::CostOnly:
            key1 = inner.cost;
            break;
          case Objective::AccessMax:
            key1 = -inner.access;
            key2 = inner.cost;
            break;
        }
        std::vector<std::string> selected;
        selected.reserve(comb.size());
        for (std::size_t pos : comb) selected.push_back(inst.stations[ord.stations[pos]].id);
        bool take = false;
        if (!best.has || key1 < best.key1) {
          take = true;
        } else if (key1 == best.key1) {
          if (key2 < best.key2) {
            take = true;
          } else if (key2 == best.key2) {
            if (selected < best.selected) {
              take = true;
            } else if (selected == best.selected && inner.pick < best.inner.pick) {
              take = true;
            }
          }
        }
        if (take) {
          best.has = true;
          best.key1 = key1;
          best.key2 = key2;
          best.selected = std::move(selected);
          best.inner = std::move(inner);
        }
      }
    }
    int i = inst.p - 1;
    while (i >= 0 && comb[i] == static_cast<std::size_t>(nj - inst.p + i)) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < inst.p; ++j) comb[j] = comb[j - 1] + 1;
  }

  if (!best.has) {
    throw InfeasibleError("no station subset of size " + std::to_string(inst.p) +
                          " admits a complete assignment");
  }
  PlacementSolution sol;
  sol.selected = best.selected;
  for (std::size_t k = 0; k < best.inner.pick.size(); ++k) {
    const auto& demand_id = inst.demand_points[ord.demands[k]].id;
    sol.assignment[demand_id] = best.selected[static_cast<std::size_t>(best.inner.pick[k])];
  }
  auto breakdown = objective_value(inst, sol);
  sol.cost_term = breakdown.cost_term;
  sol.access_term = breakdown.access_term;
  sol.objective = breakdown.objective;
  return sol;
}

}  // namespace

GreedyResult greedy_feasible(const PlacementInstance& inst) {
  validate_instance(inst);
  std::vector<long long> rem;
  rem.reserve(inst.stations.size());
  for (const auto& s : inst.stations) rem.push_back(s.capacity);
  std::map<std::string, std::string> assignment;
  std::set<std::string> used;
  for (std::size_t i = 0; i < inst.demand_points.size(); ++i) {
    const auto& d = inst.demand_points[i];
    bool placed = false;
    for (std::size_t j = 0; j < inst.stations.size(); ++j) {
      if (inst.cost.forbidden(i, j)) continue;
      if (rem[j] >= d.weight) {
        rem[j] -= d.weight;
        assignment[d.id] = inst.stations[j].id;
        used.insert(inst.stations[j].id);
        placed = true;
        break;
      }
    }
    if (!placed) throw GreedyStuckError("demand " + d.id + " fits no remaining station capacity");
  }
  GreedyResult out;
  out.solution.selected.assign(used.begin(), used.end());
  out.solution.assignment = std::move(assignment);
  auto breakdown = objective_value(inst, out.solution);
  out.solution.cost_term = breakdown.cost_term;
  out.solution.access_term = breakdown.access_term;
  out.solution.objective = breakdown.objective;
  out.meets_station_count = static_cast<int>(used.size()) == inst.p;
  return out;
}

PlacementSolution exact_solve(const PlacementInstance& inst, const SolveOptions& opts) {
  return solve_mode(inst, Objective::Scalarized, opts);
}

PlacementSolution cost_only_solution(const PlacementInstance& inst, const SolveOptions& opts) {
  return solve_mode(inst, Objective::CostOnly, opts);
}

PlacementSolution access_maximizing_solution(const PlacementInstance& inst,
                                             const SolveOptions& opts) {
  return solve_mode(inst, Objective::AccessMax, opts);
}

AssignmentResult assignment_subproblem(const PlacementInstance& inst,
                                       const std::vector<std::string>& open_station_ids) {
  validate_instance(inst);
  Ordering ord = make_ordering(inst);
  auto smap = station_index_map(inst);
  std::vector<std::size_t> pos_of(inst.stations.size());
  for (std::size_t pos = 0; pos < ord.stations.size(); ++pos) pos_of[ord.stations[pos]] = pos;
  std::set<std::string> seen;
  std::vector<std::size_t> subset;
  for (const auto& id : open_station_ids) {
    auto it = smap.find(id);
    if (it == smap.end()) throw Error("unknown station id: " + id);
    if (!seen.insert(id).second) throw Error("station listed twice: " + id);
    subset.push_back(pos_of[it->second]);
  }
  std::sort(subset.begin(), subset.end());
  Subproblem sp{&inst, &ord, subset, Objective::Scalarized};
  InnerSolution inner = solve_subset(sp);
  if (!inner.feasible) throw InfeasibleError("open stations cannot absorb all demand");
  AssignmentResult out;
  out.weight = inner.weight;
  for (std::size_t k = 0; k < inner.pick.size(); ++k) {
    out.assignment[inst.demand_points[ord.demands[k]].id] =
        inst.stations[sp.station_index(static_cast<std::size_t>(inner.pick[k]))].id;
  }
  return out;
}

PlacementSolution brute_force_oracle(const PlacementInstance& inst) {
  validate_instance(inst);
  if (inst.stations.size() > 8 || inst.demand_points.size() > 10) {
    throw OracleSizeError("oracle limited to 8 stations and 10 demand points");
  }
  Ordering ord = make_ordering(inst);
  const std::size_t n = ord.demands.size();
  const int nj = static_cast<int>(inst.stations.size());

  bool has = false;
  double best_obj = 0.0;
  std::vector<std::string> best_selected;
  std::vector<int> best_pick;

  std::vector<std::size_t> comb(inst.p);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  std::vector<long long> rem(comb.size());
  std::vector<int> pick(n, -1);
  std::vector<std::string> selected;

  std::function<void(std::size_t, double, double)> enumerate = [&](std::size_t k, double cost,
                                                                   double access) {
    if (k == n) {
      double obj = cost - inst.lambda * access;
      bool take =
          !has || obj < best_obj ||
          (obj == best_obj && (selected < best_selected ||
                               (selected == best_selected && pick < best_pick)));
      if (take) {
        has = true;
        best_obj = obj;
        best_selected = selected;
        best_pick = pick;
      }
      return;
    }
    std::size_t i = ord.demands[k];
    const DemandPoint& d = inst.demand_points[i];
    for (std::size_t pos = 0; pos < comb.size(); ++pos) {
      std::size_t j = ord.stations[comb[pos]];
      if (inst.cost.forbidden(i, j)) continue;
      if (rem[pos] < d.weight) continue;
      rem[pos] -= d.weight;
      pick[k] = static_cast<int>(pos);
      enumerate(k + 1, cost + d.weight * inst.cost.at(i, j),
                access + access_weight(inst, i, j));
      pick[k] = -1;
      rem[pos] += d.weight;
    }
  };

  while (true) {
    selected.clear();
    for (std::size_t pos : comb) selected.push_back(inst.stations[ord.stations[pos]].id);
    for (std::size_t pos = 0; pos < comb.size(); ++pos) {
      rem[pos] = inst.stations[ord.stations[comb[pos]]].capacity;
    }
    enumerate(0, 0.0, 0.0);
    int i = inst.p - 1;
    while (i >= 0 && comb[i] == static_cast<std::size_t>(nj - inst.p + i)) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < inst.p; ++j) comb[j] = comb[j - 1] + 1;
  }

  if (!has) throw InfeasibleError("exhaustive search finds no feasible solution");
  PlacementSolution sol;
  sol.selected = best_selected;
  for (std::size_t k = 0; k < n; ++k) {
    sol.assignment[inst.demand_points[ord.demands[k]].id] =
        best_selected[static_cast<std::size_t>(best_pick[k])];
  }
  if (!validate_solution(inst, sol).empty()) {
    throw Error("internal: oracle produced an infeasible solution");
  }
  auto breakdown = objective_value(inst, sol);
  sol.cost_term = breakdown.cost_term;
  sol.access_term = breakdown.access_term;
  sol.objective = breakdown.objective;
  return sol;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::SubsetLimitExceeded:
      return "subset-limit-exceeded";
  }
  return "unknown";
}

std::vector<ParetoPoint> lambda_sweep(const PlacementInstance& inst,
                                      const std::vector<double>& lambdas,
                                      const SolveOptions& opts) {
  validate_instance(inst);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] < 0.0) throw Error("lambda must be nonnegative");
    if (i > 0 && lambdas[i] < lambdas[i - 1]) throw Error("lambda grid must be ascending");
  }

  std::optional<PlacementSolution> access_max;
  try {
    access_max = access_maximizing_solution(inst, opts);
  } catch (const InfeasibleError&) {
  } catch (const SubsetLimitError&) {
  }

  std::vector<ParetoPoint> points;
  points.reserve(lambdas.size());
  for (double lambda : lambdas) {
    PlacementInstance variant = inst;
    variant.lambda = lambda;
    ParetoPoint pt;
    pt.lambda = lambda;
    try {
      pt.solution = exact_solve(variant, opts);
      pt.cost_term = pt.solution.cost_term;
      pt.access_term = pt.solution.access_term;
      pt.status = SolveStatus::Optimal;
      pt.saturated = access_max && pt.solution.selected == access_max->selected;
      if (lambda == 0.0) {
        PlacementSolution pure = cost_only_solution(variant, opts);
        if (pure.selected != pt.solution.selected || pure.assignment != pt.solution.assignment) {
          throw Error("internal: lambda=0 point diverges from the cost-only optimum");
        }
      }
    } catch (const InfeasibleError& e) {
      pt.status = SolveStatus::Infeasible;
      pt.error = e.what();
    } catch (const SubsetLimitError& e) {
      pt.status = SolveStatus::SubsetLimitExceeded;
      pt.error = e.what();
    }
    points.push_back(std::move(pt));
  }

  // Scalarization guarantees both terms are nondecreasing in lambda; a
  // violation would be a solver defect, so it aborts the sweep.
  const ParetoPoint* prev = nullptr;
  for (const auto& pt : points) {
    if (pt.status != SolveStatus::Optimal) continue;
    if (prev != nullptr) {
      double cost_slack = 1e-9 * (1.0 + std::abs(prev->cost_term));
      double access_slack = 1e-9 * (1.0 + std::abs(prev->access_term));
      if (pt.cost_term < prev->cost_term - cost_slack ||
          pt.access_term < prev->access_term - access_slack) {
        throw Error("internal: sweep monotonicity violated near lambda = " +
                    std::to_string(pt.lambda));
      }
    }
    prev = &pt;
  }
  return points;
}

std::vector<ParetoPoint> pareto_filter(const std::vector<ParetoPoint>& points) {
  std::vector<ParetoPoint> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].status != SolveStatus::Optimal) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j == i || points[j].status != SolveStatus::Optimal) continue;
      bool no_worse = points[j].cost_term <= points[i].cost_term &&
                      points[j].access_term >= points[i].access_term;
      bool strictly = points[j].cost_term < points[i].cost_term ||
                      points[j].access_term > points[i].access_term;
      if (no_worse && strictly) dominated = true;
    }
    if (!dominated) kept.push_back(points[i]);
  }
  return kept;
}

}  // namespace evplace
