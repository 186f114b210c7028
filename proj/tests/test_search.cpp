#include <stdexcept>
#include <random>

#include "doctest.h"
#include "rih/search.hpp"

using namespace rih;

TEST_CASE("ground energy r=2 n=3, zero plug") {
  const auto rep = ground_energy_search(LatticeSpec(2, 3), toy_plug("zero"));
  CHECK(rep.certified);
  CHECK(rep.global_min == doctest::Approx(36.0));
  CHECK(rep.lower_bound == doctest::Approx(36.0));
  CHECK(rep.single_copy_min == doctest::Approx(18.0));
  REQUIRE(rep.argmin);
  const LatticeGraph g(rep.spec);
  for (const auto& r : rep.records) {
    CHECK(classify_codes(g, r.c1).looped);
    CHECK(classify_codes(g, r.c2).looped);
  }
}

TEST_CASE("symmetry reduction does not change the minimum") {
  SearchOptions o;
  o.symmetry_reduction = false;
  const auto full = ground_energy_search(LatticeSpec(2, 3), toy_plug("zero"), o);
  CHECK(full.certified);
  CHECK(full.global_min == doctest::Approx(36.0));
  // the pinned search sees one representative of each colour/number orbit
  const auto red = ground_energy_search(LatticeSpec(2, 3), toy_plug("zero"));
  CHECK(full.records.size() == 81 * red.records.size());
}

TEST_CASE("plug-dependent minima") {
  CHECK(ground_energy_search(LatticeSpec(2, 3), toy_plug("ff")).global_min == doctest::Approx(36.0));
  const auto afm = ground_energy_search(LatticeSpec(2, 3), toy_plug("afm"));
  CHECK(afm.certified);
  CHECK(afm.global_min == doctest::Approx(39.0));
}

TEST_CASE("threshold mode lists every sector below the threshold") {
  SearchOptions o;
  o.threshold = 37.0;
  const auto rep = ground_energy_search(LatticeSpec(2, 3), toy_plug("zero"), o);
  CHECK(rep.certified);
  CHECK(rep.records.size() == 32);
  for (const auto& r : rep.records) CHECK(r.total < 37.0);
}

TEST_CASE("exhausted budget is reported and keeps a valid lower bound") {
  SearchOptions o;
  o.node_budget = 50;
  const auto rep = ground_energy_search(LatticeSpec(2, 3), toy_plug("zero"), o);
  CHECK_FALSE(rep.complete);
  CHECK_FALSE(rep.certified);
  CHECK(rep.lower_bound <= 36.0 + 1e-9);
}

TEST_CASE("filtered minimum") {
  SearchOptions o;
  o.filter_ceiling = 60;
  o.filter = [](const LatticeGraph& g, const Codes& a, const Codes& b) {
    return !classify_codes(g, a).looped || !classify_codes(g, b).looped;
  };
  const auto rep = ground_energy_search(LatticeSpec(2, 3), toy_plug("zero"), o);
  CHECK(rep.certified);
  CHECK(rep.global_min == doctest::Approx(54.0));
}

TEST_CASE("open boundary r=2 n=3") {
  const auto rep = ground_energy_search(LatticeSpec(2, 3, Boundary::open), toy_plug("zero"));
  CHECK(rep.certified);
  CHECK(rep.global_min == doctest::Approx(24.0));
}

TEST_CASE("pairing search equals brute force on a 4-ring") {
  const LatticeSpec spec(1, 4);
  const LatticeGraph g(spec);
  std::vector<Codes> all;
  std::vector<double> e;
  for (int a = 0; a < 6561; ++a) {
    Codes c{static_cast<std::uint8_t>(a / 729), static_cast<std::uint8_t>(a / 81 % 9), static_cast<std::uint8_t>(a / 9 % 9),
            static_cast<std::uint8_t>(a % 9)};
    e.push_back(single_copy_energy(g, c).total);
    all.push_back(std::move(c));
  }
  double best = 1e300, single = 1e300;
  for (std::size_t i = 0; i < all.size(); ++i) {
    single = std::min(single, e[i]);
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (e[i] + e[j] >= best) continue;
      best = std::min(best, e[i] + e[j] + static_cast<double>(copy_coupling(g, all[i], all[j])));
    }
  }
  const auto rep = ground_energy_search(spec, toy_plug("zero"));
  CHECK(rep.certified);
  CHECK(rep.single_copy_min == doctest::Approx(single));
  CHECK(rep.global_min == doctest::Approx(best));
}

TEST_CASE("half-star bound never exceeds the best completion") {
  const LatticeSpec spec(2, 3);
  const LatticeGraph g(spec);
  SingleCopySearch s(g, site_order(g, {}), false);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    Codes partial(9, kUnassigned);
    std::vector<int> free_sites;
    for (int u = 0; u < 9; ++u) {
      if (rng() % 3 == 0) free_sites.push_back(u);
      else partial[u] = static_cast<std::uint8_t>(rng() % 9);
    }
    if (free_sites.size() > 3) free_sites.resize(3);
    for (int u = 0; u < 9; ++u)
      if (partial[u] == kUnassigned && std::find(free_sites.begin(), free_sites.end(), u) == free_sites.end())
        partial[u] = static_cast<std::uint8_t>(rng() % 9);
    const double lb = s.lower_bound(partial);
    double best = 1e300;
    int combos = 1;
    for (std::size_t i = 0; i < free_sites.size(); ++i) combos *= 9;
    for (int k = 0; k < combos; ++k) {
      Codes c = partial;
      int x = k;
      for (int u : free_sites) {
        c[u] = static_cast<std::uint8_t>(x % 9);
        x /= 9;
      }
      best = std::min(best, single_copy_energy(g, c).total);
    }
    CHECK(lb <= best + 1e-9);
  }
  CHECK(s.lower_bound(Codes(9, kUnassigned)) == doctest::Approx(18.0));
}

TEST_CASE("coordinate permutation of the visiting order keeps E0") {
  SearchOptions o;
  o.coordinate_permutation = {1, 0};
  CHECK(ground_energy_search(LatticeSpec(2, 3), toy_plug("zero"), o).global_min == doctest::Approx(36.0));
}
