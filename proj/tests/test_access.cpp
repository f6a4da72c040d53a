#include "doctest.h"

#include <cmath>

#include "evplace/access.hpp"
#include "evplace/errors.hpp"
#include "support.hpp"

using namespace evplace;
using namespace testsupport;

namespace {

AccessibilityProfile hospital_profile() {
  AccessibilityProfile p;
  p.modes = {{"drive", 0.5, 60.0}};
  p.service_types = {{"hospital", 1.0}};
  return p;
}

}  // namespace

TEST_SUITE("access") {
  TEST_CASE("diamond index reaches both hospitals inside the window") {
    RoadNetwork net = diamond_network();
    MobilityIndexResult r = mobility_index(net, "A", hospital_profile(), 0.0);
    CHECK_EQ(r.epsilon, 1.0);  // sigma = 2/2, beta = 1, cost weight 1
    REQUIRE_EQ(r.per_mode_terms.size(), 1);
    CHECK_EQ(r.per_mode_terms[0].cost_weight, 1.0);
    CHECK_EQ(r.per_mode_terms[0].inner_sum, 1.0);
    CHECK_EQ(r.per_mode_terms[0].term, 1.0);

    MobilityIndexResult priced = mobility_index(net, "A", hospital_profile(), 1.0);
    CHECK_EQ(priced.epsilon, std::exp(-0.5));
    CHECK_LT(priced.epsilon, r.epsilon);
  }

  TEST_CASE("reachable counts respect the time window") {
    RoadNetwork net = diamond_network();
    CHECK_EQ(reachable_service_count(net, "A", "drive", 60.0, "hospital"), 2);
    CHECK_EQ(reachable_service_count(net, "A", "drive", 15.0, "hospital"), 1);  // D is 19s away
    CHECK_EQ(reachable_service_count(net, "A", "drive", 5.0, "hospital"), 0);
    CHECK_EQ(reachable_service_count(net, "C", "drive", 60.0, "hospital"), 1);  // B unreachable
    CHECK_THROWS_AS(reachable_service_count(net, "A", "drive", 0.0, "hospital"), Error);
  }

  TEST_CASE("sigma clamps at one and rejects bad arguments") {
    CHECK_EQ(normalized_sigma(0, 2), 0.0);
    CHECK_EQ(normalized_sigma(1, 2), 0.5);
    CHECK_EQ(normalized_sigma(2, 2), 1.0);
    CHECK_EQ(normalized_sigma(5, 2), 1.0);
    CHECK_EQ(normalized_sigma(0, 1), 0.0);
    CHECK_THROWS_AS(normalized_sigma(1, 0), Error);
    CHECK_THROWS_AS(normalized_sigma(-1, 1), Error);
  }

  TEST_CASE("explicit normalizers override in-network counts") {
    RoadNetwork net = diamond_network();
    AccessibilityProfile p = hospital_profile();
    p.normalization["hospital"] = 4;
    CHECK_EQ(mobility_index(net, "A", p, 0.0).epsilon, 0.5);
  }

  TEST_CASE("service types absent from the network contribute zero") {
    RoadNetwork net = diamond_network();
    AccessibilityProfile p = hospital_profile();
    p.service_types.push_back({"school", 1.0});
    CHECK_EQ(mobility_index(net, "A", p, 0.0).epsilon, 1.0);

    AccessibilityProfile d = default_profile(net, {{"hospital", 1.0}, {"school", 1.0}});
    CHECK_EQ(d.normalization.count("hospital"), 1);
    CHECK_EQ(d.normalization.at("hospital"), 2);
    CHECK_EQ(d.normalization.count("school"), 0);  // no fixture to count
    REQUIRE_EQ(d.modes.size(), 1);
    CHECK_EQ(d.modes[0].mode, "drive");
    CHECK_EQ(d.modes[0].cost_per_mile, 0.5);
    CHECK_EQ(d.modes[0].tau_s, 60.0);
  }

  TEST_CASE("profile validation rejects each malformed shape") {
    RoadNetwork net = diamond_network();
    AccessibilityProfile good = hospital_profile();
    CHECK_NOTHROW(validate_profile(good, net));

    AccessibilityProfile p = good;
    p.modes.clear();
    CHECK_THROWS_AS(validate_profile(p, net), Error);

    p = good;
    p.modes[0].mode = "fly";
    CHECK_THROWS_AS(validate_profile(p, net), UnknownModeError);

    p = good;
    p.modes[0].tau_s = 0.0;
    CHECK_THROWS_AS(validate_profile(p, net), Error);

    p = good;
    p.modes[0].cost_per_mile = -0.1;
    CHECK_THROWS_AS(validate_profile(p, net), Error);

    p = good;
    p.service_types.clear();
    CHECK_THROWS_AS(validate_profile(p, net), Error);

    p = good;
    p.service_types[0].beta = -1.0;
    CHECK_THROWS_AS(validate_profile(p, net), Error);

    p = good;
    p.service_types[0].beta = 0.0;
    CHECK_THROWS_AS(validate_profile(p, net), Error);

    p = good;
    p.normalization["hospital"] = 0;
    CHECK_THROWS_AS(validate_profile(p, net), Error);

    CHECK_THROWS_AS(mobility_index(net, "A", good, -0.5), Error);
  }

  TEST_CASE("random networks agree with the direct definition") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      std::mt19937_64 rng(seed);
      NetworkDef def = random_network_def(rng, 6, 2, 3);
      RoadNetwork net(def);
      AccessibilityProfile profile = random_profile(rng, def, 3);
      double kappa = 0.5 * static_cast<double>(rng() % 5);
      const std::string& node = def.nodes[rng() % def.nodes.size()];

      MobilityIndexResult got = mobility_index(net, node, profile, kappa);
      double want = mi_oracle(def, node, profile, kappa);
      CHECK_LE(std::abs(got.epsilon - want), 1e-12 * (1.0 + std::abs(want)));

      double term_sum = 0.0;
      for (const auto& t : got.per_mode_terms) {
        CHECK_EQ(t.term, t.cost_weight * t.inner_sum);
        term_sum += t.term;
      }
      CHECK_EQ(term_sum, got.epsilon);
    }
  }

  TEST_CASE("index falls with kappa and rises with wider windows") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      std::mt19937_64 rng(seed);
      NetworkDef def = random_network_def(rng, 6, 2, 3);
      RoadNetwork net(def);
      AccessibilityProfile profile = random_profile(rng, def, 3);
      const std::string& node = def.nodes[rng() % def.nodes.size()];

      double prev = mobility_index(net, node, profile, 0.0).epsilon;
      for (double kappa : {0.5, 1.0, 2.0}) {
        double cur = mobility_index(net, node, profile, kappa).epsilon;
        CHECK_LE(cur, prev);
        prev = cur;
      }

      AccessibilityProfile wide = profile;
      for (auto& m : wide.modes) m.tau_s *= 2.0;
      CHECK_GE(mobility_index(net, node, wide, 1.0).epsilon,
               mobility_index(net, node, profile, 1.0).epsilon);
    }
  }

  TEST_CASE("mem score fixtures") {
    CHECK_EQ(mem_score({1.0, 1.0, 1.0, 1.0}), 1.0);
    CHECK_EQ(mem_score({2.0, 2.0}), 1.0);
    CHECK_EQ(mem_score({0.0, 1.0}), 0.5);
    CHECK_EQ(mem_score({5.0}), 1.0);
    CHECK_THROWS_AS(mem_score({}), Error);
    CHECK_THROWS_AS(mem_score({0.0, 0.0, 0.0}), DegenerateInputError);
    CHECK_THROWS_AS(mem_score({1.0, -1.0}), Error);
  }

  TEST_CASE("mem score ignores order and scale") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> values;
      const int n = 2 + static_cast<int>(rng() % 9);
      for (int i = 0; i < n; ++i) values.push_back(static_cast<double>(1 + rng() % 20));

      double base = mem_score(values);
      CHECK_GT(base, 0.0);
      CHECK_LE(base, 1.0);

      std::vector<double> shuffled = values;
      for (std::size_t i = shuffled.size(); i > 1; --i) {
        std::swap(shuffled[i - 1], shuffled[rng() % i]);
      }
      CHECK_EQ(mem_score(shuffled), base);  // sorted internally, so exact

      std::vector<double> scaled = values;
      for (double& v : scaled) v *= 8.0;  // power of two keeps the ratio exact
      CHECK_EQ(mem_score(scaled), base);
    }
  }
}
