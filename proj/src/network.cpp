#include "evplace/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>

#include "evplace/errors.hpp"

namespace evplace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

RoadNetwork::RoadNetwork(NetworkDef def) {
  node_ids_ = std::move(def.nodes);
  for (std::size_t i = 0; i < node_ids_.size(); ++i) {
    if (!node_index_.emplace(node_ids_[i], static_cast<int>(i)).second) {
      throw Error("duplicate node id: " + node_ids_[i]);
    }
  }
  out_arcs_.resize(node_ids_.size());
  in_arcs_.resize(node_ids_.size());
  for (const auto& e : def.edges) {
    add_arc(e.from, e.to, e.length_m);
    if (e.bidirectional) {
      add_arc(e.to, e.from, e.length_m);
    }
  }
  auto by_node_id = [this](const Arc& a, const Arc& b) {
    return node_ids_[a.node] < node_ids_[b.node];
  };
  for (auto& arcs : out_arcs_) std::sort(arcs.begin(), arcs.end(), by_node_id);
  for (auto& arcs : in_arcs_) std::sort(arcs.begin(), arcs.end(), by_node_id);
  modes_ = std::move(def.modes);
  for (const auto& [id, spec] : modes_) {
    if (!(spec.speed_mps > 0.0)) {
      throw Error("mode '" + id + "' must have a strictly positive speed");
    }
  }
  services_ = std::move(def.services);
  for (const auto& poi : services_) {
    if (node_index_.find(poi.node) == node_index_.end()) throw UnknownNodeError(poi.node);
  }
}

void RoadNetwork::add_arc(const std::string& from, const std::string& to, double length_m) {
  auto fi = node_index_.find(from);
  if (fi == node_index_.end()) throw UnknownNodeError(from);
  auto ti = node_index_.find(to);
  if (ti == node_index_.end()) throw UnknownNodeError(to);
  if (!(length_m > 0.0)) {
    throw Error("edge " + from + " -> " + to + " must have a strictly positive length");
  }
  out_arcs_[fi->second].push_back({ti->second, length_m});
  in_arcs_[ti->second].push_back({fi->second, length_m});
}

int RoadNetwork::index_of(const std::string& id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) throw UnknownNodeError(id);
  return it->second;
}

const ModeSpec& RoadNetwork::mode(const std::string& id) const {
  auto it = modes_.find(id);
  if (it == modes_.end()) throw UnknownModeError(id);
  return it->second;
}

namespace {

enum class Direction { Forward, Backward };

std::vector<double> dijkstra(const RoadNetwork& net, int origin, Direction dir) {
  std::vector<double> dist(net.node_count(), kInf);
  dist[origin] = 0.0;
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.push({0.0, origin});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    const auto& arcs = dir == Direction::Forward ? net.out_arcs(u) : net.in_arcs(u);
    for (const auto& arc : arcs) {
      double next = d + arc.length_m;
      if (next < dist[arc.node]) {
        dist[arc.node] = next;
        heap.push({next, arc.node});
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<double> shortest_distance_field(const RoadNetwork& net, const std::string& origin) {
  return dijkstra(net, net.index_of(origin), Direction::Forward);
}

PathCost shortest_path_cost(const RoadNetwork& net, const std::string& origin,
                            const std::string& dest, const std::string& mode) {
  const ModeSpec& spec = net.mode(mode);
  int o = net.index_of(origin);
  int t = net.index_of(dest);
  auto dist = dijkstra(net, o, Direction::Forward);
  if (dist[t] == kInf) throw UnreachableError(origin, dest);
  return {dist[t] / spec.speed_mps, dist[t]};
}

Path shortest_path(const RoadNetwork& net, const std::string& origin, const std::string& dest,
                   const std::string& mode) {
  const ModeSpec& spec = net.mode(mode);
  int o = net.index_of(origin);
  int t = net.index_of(dest);
  auto from_origin = dijkstra(net, o, Direction::Forward);
  if (from_origin[t] == kInf) throw UnreachableError(origin, dest);
  auto to_dest = dijkstra(net, t, Direction::Backward);
  double total = from_origin[t];
  double slack = 1e-9 * (1.0 + total);

  // Walk the shortest-path DAG always taking the smallest admissible neighbor
  // id; with positive edge lengths this terminates and yields the
  // lexicographically smallest node sequence among minimum-cost paths.
  Path path;
  path.nodes.push_back(net.node_id(o));
  int u = o;
  double walked = 0.0;
  while (u != t) {
    bool advanced = false;
    for (const auto& arc : net.out_arcs(u)) {  // sorted by target id
      if (std::abs(from_origin[u] + arc.length_m + to_dest[arc.node] - total) <= slack) {
        walked += arc.length_m;
        u = arc.node;
        path.nodes.push_back(net.node_id(u));
        advanced = true;
        break;
      }
    }
    if (!advanced) throw Error("internal: shortest-path reconstruction failed");
  }
  path.distance_m = walked;
  path.time_s = walked / spec.speed_mps;
  return path;
}

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0), forbidden_(rows * cols, 0) {}

std::size_t CostMatrix::index(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw Error("cost matrix index out of range");
  return r * cols_ + c;
}

double CostMatrix::at(std::size_t r, std::size_t c) const {
  std::size_t i = index(r, c);
  if (forbidden_[i]) throw Error("cost requested for a forbidden pair");
  return values_[i];
}

bool CostMatrix::forbidden(std::size_t r, std::size_t c) const {
  return forbidden_[index(r, c)] != 0;
}

void CostMatrix::set(std::size_t r, std::size_t c, double value) {
  std::size_t i = index(r, c);
  values_[i] = value;
  forbidden_[i] = 0;
}

void CostMatrix::set_forbidden(std::size_t r, std::size_t c) {
  forbidden_[index(r, c)] = 1;
}

CostMatrix cost_matrix(const RoadNetwork& net, const std::vector<std::string>& demand_nodes,
                       const std::vector<std::string>& station_nodes, const std::string& mode,
                       CostMetric metric, UnreachablePolicy policy) {
  const ModeSpec& spec = net.mode(mode);
  std::vector<int> station_idx;
  station_idx.reserve(station_nodes.size());
  for (const auto& s : station_nodes) station_idx.push_back(net.index_of(s));

  CostMatrix m(demand_nodes.size(), station_nodes.size());
  std::map<int, std::vector<double>> field_cache;
  for (std::size_t r = 0; r < demand_nodes.size(); ++r) {
    int o = net.index_of(demand_nodes[r]);
    auto it = field_cache.find(o);
    if (it == field_cache.end()) {
      it = field_cache.emplace(o, shortest_distance_field(net, demand_nodes[r])).first;
    }
    const auto& dist = it->second;
    for (std::size_t c = 0; c < station_idx.size(); ++c) {
      double d = dist[station_idx[c]];
      if (d == kInf) {
        if (policy == UnreachablePolicy::Error) {
          throw UnreachableError(demand_nodes[r], station_nodes[c]);
        }
        m.set_forbidden(r, c);
        continue;
      }
      m.set(r, c, metric == CostMetric::Distance ? d : d / spec.speed_mps);
    }
  }
  return m;
}

}  // namespace evplace
