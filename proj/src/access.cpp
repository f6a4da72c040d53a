#include "evplace/access.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evplace/errors.hpp"

namespace evplace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int service_count_in_network(const RoadNetwork& net, const std::string& type) {
  int n = 0;
  for (const auto& poi : net.services()) {
    if (poi.service_type == type) ++n;
  }
  return n;
}

int normalizer_for(const AccessibilityProfile& profile, const RoadNetwork& net,
                   const std::string& type) {
  auto it = profile.normalization.find(type);
  if (it != profile.normalization.end()) return it->second;
  int total = service_count_in_network(net, type);
  return total > 0 ? total : 1;
}

}  // namespace

void validate_profile(const AccessibilityProfile& profile, const RoadNetwork& net) {
  if (profile.modes.empty()) throw Error("profile must declare at least one mode");
  for (const auto& m : profile.modes) {
    net.mode(m.mode);  // raises on modes the network does not know
    if (!(m.tau_s > 0.0)) {
      throw Error("mode '" + m.mode + "' must have a positive time window");
    }
    if (m.cost_per_mile < 0.0) {
      throw Error("mode '" + m.mode + "' must have a nonnegative travel cost");
    }
  }
  if (profile.service_types.empty()) throw Error("profile must declare at least one service type");
  bool any_positive = false;
  for (const auto& s : profile.service_types) {
    if (s.beta < 0.0) {
      throw Error("service type '" + s.service_type + "' must have a nonnegative priority");
    }
    if (s.beta > 0.0) any_positive = true;
  }
  if (!any_positive) throw Error("at least one service priority must be positive");
  for (const auto& [type, n] : profile.normalization) {
    if (n < 1) throw Error("normalization count for '" + type + "' must be >= 1");
  }
}

AccessibilityProfile default_profile(const RoadNetwork& net,
                                     const std::vector<ServicePriority>& service_types) {
  AccessibilityProfile p;
  for (const auto& [id, spec] : net.modes()) {
    p.modes.push_back({id, spec.cost_per_mile, spec.tau_s});
  }
  p.service_types = service_types;
  for (const auto& s : service_types) {
    int total = service_count_in_network(net, s.service_type);
    if (total > 0) p.normalization[s.service_type] = total;
  }
  return p;
}

int reachable_service_count(const RoadNetwork& net, const std::string& node,
                            const std::string& mode, double tau_s,
                            const std::string& service_type) {
  if (!(tau_s > 0.0)) throw Error("time window must be positive");
  const ModeSpec& spec = net.mode(mode);
  auto dist = shortest_distance_field(net, node);
  int count = 0;
  for (const auto& poi : net.services()) {
    if (poi.service_type != service_type) continue;
    double d = dist[net.index_of(poi.node)];
    if (d == kInf) continue;
    if (d / spec.speed_mps <= tau_s) ++count;
  }
  return count;
}

double normalized_sigma(int count, int normalizer) {
  if (normalizer < 1) throw Error("sigma normalizer must be >= 1");
  if (count < 0) throw Error("service count must be nonnegative");
  return std::min(1.0, static_cast<double>(count) / normalizer);
}

MobilityIndexResult mobility_index(const RoadNetwork& net, const std::string& node,
                                   const AccessibilityProfile& profile, double kappa) {
  if (kappa < 0.0) throw Error("kappa must be nonnegative");
  validate_profile(profile, net);
  // Distances are mode-independent; only the time conversion differs per mode.
  auto dist = shortest_distance_field(net, node);
  MobilityIndexResult result;
  result.node = node;
  for (const auto& mode : profile.modes) {
    const ModeSpec& spec = net.mode(mode.mode);
    ModeTerm term;
    term.mode = mode.mode;
    term.cost_weight = std::exp(-kappa * mode.cost_per_mile);
    for (const auto& svc : profile.service_types) {
      int count = 0;
      for (const auto& poi : net.services()) {
        if (poi.service_type != svc.service_type) continue;
        double d = dist[net.index_of(poi.node)];
        if (d != kInf && d / spec.speed_mps <= mode.tau_s) ++count;
      }
      term.inner_sum +=
          svc.beta * normalized_sigma(count, normalizer_for(profile, net, svc.service_type));
    }
    term.term = term.cost_weight * term.inner_sum;
    result.per_mode_terms.push_back(term);
    result.epsilon += term.term;
  }
  return result;
}

double mem_score(const std::vector<double>& epsilons) {
  if (epsilons.empty()) throw Error("mem_score needs at least one value");
  double sum = 0.0;
  for (double e : epsilons) {
    if (e < 0.0) throw Error("mobility indices must be nonnegative");
    sum += e;
  }
  if (sum == 0.0) {
    throw DegenerateInputError("mobility indices are all zero; inequality is undefined");
  }
  // Sorting first makes the result independent of input order.
  std::vector<double> sorted = epsilons;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  double mean = 0.0;
  for (double e : sorted) mean += e;
  mean /= static_cast<double>(n);
  double abs_diff_sum = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      abs_diff_sum += std::abs(sorted[a] - sorted[b]);
    }
  }
  double gini = abs_diff_sum / (2.0 * static_cast<double>(n) * static_cast<double>(n) * mean);
  return 1.0 - gini;
}

}  // namespace evplace
