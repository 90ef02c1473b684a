#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>
#include <vector>

#include "congestion/core.hpp"
#include "congestion/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace congestion;

TEST_CASE("beach reward values") {
  // Frozen oracle evaluations of x * exp(-x/psi).
  CHECK(resource_reward(DomainKind::Beach, 1.0, 6, 6) ==
        doctest::Approx(2.207276647028654).epsilon(1e-12));
  CHECK(resource_reward(DomainKind::Beach, 1.0, 6, 70) ==
        doctest::Approx(0.0006002457371870609).epsilon(1e-12));
  CHECK(resource_reward(DomainKind::Beach, 1.0, 6, 0) == 0.0);
  // Weight plays no role in the beach family.
  CHECK(resource_reward(DomainKind::Beach, 123.0, 6, 6) ==
        resource_reward(DomainKind::Beach, 1.0, 6, 6));
}

TEST_CASE("beach reward peaks exactly at capacity") {
  for (int psi : {1, 2, 3, 6, 18, 167}) {
    int best_x = -1;
    double best = -1.0;
    for (int x = 0; x <= 10 * psi; ++x) {
      const double value = resource_reward(DomainKind::Beach, 1.0, psi, x);
      if (value > best) {
        best = value;
        best_x = x;
      }
    }
    CHECK(best_x == psi);
  }
}

TEST_CASE("traffic reward values") {
  // Frozen oracle evaluations of the two-branch lane family.
  CHECK(resource_reward(DomainKind::Traffic, 10.0, 5, 3) ==
        doctest::Approx(3.6787944117144233).epsilon(1e-12));
  CHECK(resource_reward(DomainKind::Traffic, 5.0, 2, 4) ==
        doctest::Approx(0.6766764161830635).epsilon(1e-12));
  // Boundary x == psi still uses the decongested branch.
  CHECK(resource_reward(DomainKind::Traffic, 1.0, 167, 167) ==
        doctest::Approx(0.36787944117144233).epsilon(1e-12));
  CHECK(resource_reward(DomainKind::Traffic, 7.0, 4, 0) ==
        doctest::Approx(7.0 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("traffic reward is flat up to capacity then strictly decreasing") {
  const double plateau = resource_reward(DomainKind::Traffic, 5.0, 9, 0);
  for (int x = 0; x <= 9; ++x) {
    CHECK(resource_reward(DomainKind::Traffic, 5.0, 9, x) == plateau);
  }
  double previous = plateau;
  for (int x = 10; x <= 90; ++x) {
    const double value = resource_reward(DomainKind::Traffic, 5.0, 9, x);
    CHECK(value < previous);
    previous = value;
  }
}

TEST_CASE("congestion is strict") {
  CHECK_FALSE(is_congested(6, 5));
  CHECK_FALSE(is_congested(6, 6));
  CHECK(is_congested(6, 7));
}

TEST_CASE("reward matches the independent oracle on random inputs") {
  Rng rng(42);
  for (int i = 0; i < 2000; ++i) {
    const DomainKind kind = rng.uniform_below(2) == 0 ? DomainKind::Beach
                                                      : DomainKind::Traffic;
    const double weight = 1.0 + rng.uniform_below(10);
    const int capacity = 1 + rng.uniform_below(200);
    const int attendance = rng.uniform_below(500);
    CHECK(resource_reward(kind, weight, capacity, attendance) ==
          doctest::Approx(oracle::section_value(kind, weight, capacity, attendance))
              .epsilon(1e-12));
  }
}

TEST_CASE("attendance recomputation") {
  const std::vector<int> positions{0, 0, 1, 3};
  CHECK(recompute_attendance(positions, 4) == std::vector<int>{2, 1, 0, 1});
  CHECK(recompute_attendance(std::vector<int>{}, 3) == std::vector<int>{0, 0, 0});
  CHECK_THROWS_AS(recompute_attendance(std::vector<int>{5}, 4), std::logic_error);
  CHECK_THROWS_AS(recompute_attendance(std::vector<int>{-1}, 4), std::logic_error);

  WorldState state;
  state.agent_positions = positions;
  state.attendance = {2, 1, 0, 1};
  CHECK(attendance_consistent(state));
  state.attendance = {1, 2, 0, 1};
  CHECK_FALSE(attendance_consistent(state));
}

TEST_CASE("domain kind names") {
  CHECK(to_string(DomainKind::Beach) == "bpd");
  CHECK(to_string(DomainKind::Traffic) == "tld");
  CHECK(domain_kind_from_string("bpd") == DomainKind::Beach);
  CHECK(domain_kind_from_string("TLD") == DomainKind::Traffic);
  CHECK(domain_kind_from_string("beach") == DomainKind::Beach);
  CHECK_THROWS_AS(domain_kind_from_string("road"), ConfigError);
}

TEST_CASE("rng streams are reproducible and well ranged") {
  Rng a(12345);
  Rng b(12345);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform01();
    CHECK(u == b.uniform01());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Rng c(999);
  int counts[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 50000; ++i) {
    const int v = c.uniform_below(5);
    REQUIRE(v >= 0);
    REQUIRE(v < 5);
    ++counts[v];
  }
  for (int bucket : counts) {
    CHECK(bucket > 9000);  // each ~10000 expected; crude uniformity bound
    CHECK(bucket < 11000);
  }
}

TEST_CASE("splitmix64 reference vector") {
  // First three outputs of the reference sequence seeded with 0.
  CHECK(splitmix64(0) == 16294208416658607535ull);
  CHECK(splitmix64(0x9E3779B97F4A7C15ull) == 7960286522194355700ull);
  CHECK(splitmix64(2 * 0x9E3779B97F4A7C15ull) == 487617019471545679ull);
}
