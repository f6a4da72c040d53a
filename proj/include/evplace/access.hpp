#pragma once

// Per-node mobility index (mode-weighted, threshold-limited service access)
// and the population-level equity score derived from it.

#include <map>
#include <string>
#include <vector>

#include "evplace/network.hpp"

namespace evplace {

struct ModeCost {
  std::string mode;
  double cost_per_mile = 0.0;  // c_m
  double tau_s = 0.0;          // reachability window for this mode
};

struct ServicePriority {
  std::string service_type;
  double beta = 0.0;
};

struct AccessibilityProfile {
  std::vector<ModeCost> modes;
  std::vector<ServicePriority> service_types;
  // Per-type denominator for the normalized service count. Types missing here
  // default to the total count of that type in the network.
  std::map<std::string, int> normalization;
};

// Throws when the profile violates its invariants against this network.
void validate_profile(const AccessibilityProfile& profile, const RoadNetwork& net);

// Profile mirroring the network's mode table, with normalizers defaulted to
// in-network service counts.
AccessibilityProfile default_profile(const RoadNetwork& net,
                                     const std::vector<ServicePriority>& service_types);

int reachable_service_count(const RoadNetwork& net, const std::string& node,
                            const std::string& mode, double tau_s,
                            const std::string& service_type);

// count/normalizer clamped into [0, 1].
double normalized_sigma(int count, int normalizer);

struct ModeTerm {
  std::string mode;
  double cost_weight = 0.0;  // e^(-kappa * c_m)
  double inner_sum = 0.0;    // sum over service types of beta * sigma
  double term = 0.0;         // cost_weight * inner_sum
};

struct MobilityIndexResult {
  std::string node;
  double epsilon = 0.0;
  std::vector<ModeTerm> per_mode_terms;
};

MobilityIndexResult mobility_index(const RoadNetwork& net, const std::string& node,
                                   const AccessibilityProfile& profile, double kappa);

// 1 - Gini over a population of mobility indices; 1 means perfectly even.
double mem_score(const std::vector<double>& epsilons);

}  // namespace evplace
