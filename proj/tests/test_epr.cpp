#include <stdexcept>
#include <random>

#include "doctest.h"
#include "rih/epr.hpp"
#include "rih/tiling.hpp"

using namespace rih;

TEST_CASE("two demands sharing a qubit cost a quarter each unit") {
  CHECK(epr_dense_oracle(3, {{0, 1}, {1, 2}}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(epr_component_energy(3, {{0, 1}, {1, 2}}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(epr_component_energy(2, {{0, 1}}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("star of three demands on one slot") {
  const std::vector<std::pair<int, int>> star{{0, 1}, {0, 2}, {0, 3}};
  CHECK(epr_dense_oracle(4, star) == doctest::Approx(8.0).epsilon(1e-10));
  CHECK(epr_component_energy(4, star) == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("sector solve matches the dense oracle on random bipartite demand graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 9);
    // even slots play sigma2, odd slots sigma1
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < k; a += 2)
      for (int b = 1; b < k; b += 2)
        if (rng() % 3 == 0) pairs.emplace_back(a, b);
    if (pairs.empty()) continue;
    const double dense = epr_dense_oracle(k, pairs);
    CHECK(epr_component_energy(k, pairs) == doctest::Approx(dense).epsilon(1e-9));
    CHECK(epr_component_bound(k, pairs) <= dense + 1e-9);
  }
}

TEST_CASE("demand graph of a sequential ring") {
  const LatticeSpec ring(1, 3);
  const LatticeGraph g(ring);
  const auto d = epr_demand_graph_codes(g, {0, 1, 2});
  CHECK(d.demands.size() == 3);
  CHECK(d.conflict_count() == 0);
  CHECK(epr_min_energy(d).value == doctest::Approx(0.0));
}

TEST_CASE("same colour same number gives a marker, not a demand") {
  const LatticeGraph g(LatticeSpec(1, 3, Boundary::open));
  const auto d = epr_demand_graph_codes(g, {4, 4, 5});
  CHECK(d.markers.size() == 1);
  CHECK(d.demands.size() == 1);
}

TEST_CASE("numbers alone decide the demand") {
  // red 0 next to yellow 1: a rule-2 violation, still a demand
  const LatticeGraph g(LatticeSpec(1, 3, Boundary::open));
  const auto d = epr_demand_graph_codes(g, {0, 4, 8});
  CHECK(d.demands.size() == 2);
}

TEST_CASE("large components fall back to a flagged bound") {
  // path of 14 slots alternating sigma2 / sigma1 with every slot shared
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < 14; ++i) pairs.emplace_back(i % 2 == 0 ? i : i + 1, i % 2 == 0 ? i + 1 : i);
  EprDemandGraph g;
  g.num_sites = 7;
  g.slot_degree.assign(14, 0);
  for (auto [a, b] : pairs) {
    g.demands.emplace_back(a, b);
    ++g.slot_degree[static_cast<std::size_t>(a)];
    ++g.slot_degree[static_cast<std::size_t>(b)];
  }
  const auto exact = epr_min_energy(g, 14);
  const auto bound = epr_min_energy(g, 12);
  CHECK_FALSE(exact.bound_only);
  CHECK(bound.bound_only);
  CHECK(bound.value <= exact.value + 1e-9);
  CHECK(bound.value > 0.0);
}
