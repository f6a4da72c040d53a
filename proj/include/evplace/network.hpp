#pragma once

// Directed road graph with per-mode travel speeds. Every travel cost used
// elsewhere in the toolkit (assignment cost matrices, reachability windows,
// trip kinematics) comes from shortest paths over this structure.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace evplace {

struct ModeSpec {
  double speed_mps = 0.0;
  double cost_per_mile = 0.0;  // flat per-mode travel cost c_m
  double tau_s = 0.0;          // reachability time window
};

struct PointOfInterest {
  std::string node;
  std::string service_type;
};

struct EdgeDef {
  std::string from;
  std::string to;
  double length_m = 0.0;
  bool bidirectional = false;  // expanded into two directed edges on load
};

struct NetworkDef {
  std::vector<std::string> nodes;
  std::vector<EdgeDef> edges;
  std::map<std::string, ModeSpec> modes;
  std::vector<PointOfInterest> services;
};

// Immutable after construction; all queries are pure and safe to share.
class RoadNetwork {
 public:
  struct Arc {
    int node = 0;  // neighbor index: target for out-arcs, source for in-arcs
    double length_m = 0.0;
  };

  RoadNetwork() = default;
  explicit RoadNetwork(NetworkDef def);

  std::size_t node_count() const { return node_ids_.size(); }
  const std::vector<std::string>& node_ids() const { return node_ids_; }
  bool has_node(const std::string& id) const { return node_index_.count(id) > 0; }
  int index_of(const std::string& id) const;  // throws UnknownNodeError
  const std::string& node_id(int index) const { return node_ids_.at(index); }

  const std::map<std::string, ModeSpec>& modes() const { return modes_; }
  const ModeSpec& mode(const std::string& id) const;  // throws UnknownModeError

  const std::vector<PointOfInterest>& services() const { return services_; }

  // Arcs are sorted by neighbor node id so traversals are deterministic.
  const std::vector<Arc>& out_arcs(int index) const { return out_arcs_.at(index); }
  const std::vector<Arc>& in_arcs(int index) const { return in_arcs_.at(index); }

 private:
  void add_arc(const std::string& from, const std::string& to, double length_m);

  std::vector<std::string> node_ids_;
  std::map<std::string, int> node_index_;
  std::vector<std::vector<Arc>> out_arcs_;
  std::vector<std::vector<Arc>> in_arcs_;
  std::map<std::string, ModeSpec> modes_;
  std::vector<PointOfInterest> services_;
};

enum class CostMetric { Time, Distance };
enum class UnreachablePolicy { Error, Forbid };

struct PathCost {
  double time_s = 0.0;
  double distance_m = 0.0;
};

struct Path {
  std::vector<std::string> nodes;
  double time_s = 0.0;
  double distance_m = 0.0;
};

// Shortest distance in meters from origin to every node, by node index;
// infinity where unreachable. Label-setting search with a binary heap.
std::vector<double> shortest_distance_field(const RoadNetwork& net, const std::string& origin);

// Minimum-time cost between two nodes under the mode's speed, plus the
// distance of that same path.
PathCost shortest_path_cost(const RoadNetwork& net, const std::string& origin,
                            const std::string& dest, const std::string& mode);

// Full node sequence of the minimum-time path. Ties between equal-cost paths
// break toward the lexicographically smallest node sequence.
Path shortest_path(const RoadNetwork& net, const std::string& origin, const std::string& dest,
                   const std::string& mode);

// |demand| x |stations| cost table. Entries may be marked forbidden instead
// of raising, when the caller opts in for unreachable pairs.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const;
  bool forbidden(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, double value);
  void set_forbidden(std::size_t r, std::size_t c);

 private:
  std::size_t index(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
  std::vector<unsigned char> forbidden_;
};

CostMatrix cost_matrix(const RoadNetwork& net, const std::vector<std::string>& demand_nodes,
                       const std::vector<std::string>& station_nodes, const std::string& mode,
                       CostMetric metric, UnreachablePolicy policy = UnreachablePolicy::Error);

}  // namespace evplace
