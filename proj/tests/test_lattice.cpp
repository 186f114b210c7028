#include <stdexcept>
#include <algorithm>
#include <set>

#include "doctest.h"
#include "rih/lattice.hpp"

using namespace rih;

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(LatticeSpec(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(LatticeSpec(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(LatticeSpec(64, 3).num_sites(), std::overflow_error);
  CHECK(LatticeSpec(3, 4).num_sites() == 64);
  CHECK(boundary_from_string("open") == Boundary::open);
  CHECK_THROWS(boundary_from_string("twisted"));
}

TEST_CASE("lee distance wraps on the torus only") {
  const LatticeSpec p(2, 5), o(2, 5, Boundary::open);
  const Site a({0, 0}), b({4, 3});
  CHECK(lee_distance(a, b, p) == 1 + 2);
  CHECK(lee_distance(a, b, o) == 4 + 3);
  CHECK(lee_distance(a, a, p) == 0);
}

TEST_CASE("neighbour counts") {
  for (int r = 1; r <= 3; ++r) {
    const LatticeSpec p(r, 4), o(r, 4, Boundary::open);
    const LatticeGraph gp(p), go(o);
    std::int64_t sites = p.num_sites();
    CHECK(static_cast<std::int64_t>(gp.edges().size()) == r * sites);
    CHECK(static_cast<std::int64_t>(go.edges().size()) == r * 3 * sites / 4);
    for (int u = 0; u < gp.num_sites(); ++u) CHECK(gp.neighbors(u).size() == static_cast<std::size_t>(2 * r));
    CHECK(edges(p).size() == gp.edges().size());
  }
  // corner of an open square
  const LatticeSpec o(2, 3, Boundary::open);
  CHECK(neighbors(Site({0, 0}), o).size() == 2);
  CHECK(neighbors(Site({1, 1}), o).size() == 4);
}

TEST_CASE("every neighbour is at Lee distance one and differs in one coordinate") {
  const LatticeSpec spec(3, 3);
  for (std::int64_t i = 0; i < spec.num_sites(); ++i) {
    const Site u = site_at(i, spec);
    CHECK(site_index(u, spec) == i);
    const auto nb = neighbors(u, spec);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (const auto& v : nb) {
      CHECK(lee_distance(u, v, spec) == 1);
      CHECK(coord_diff_count(u, v) == 1);
    }
  }
}

TEST_CASE("graph edges are sorted, unique and oriented") {
  const LatticeSpec spec(2, 3);
  const LatticeGraph g(spec);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges()) {
    CHECK(e.a < e.b);
    CHECK(seen.insert({e.a, e.b}).second);
    const int fwd = e.a_low ? e.a : e.b, bwd = e.a_low ? e.b : e.a;
    CHECK(g.step(fwd, e.dim, +1) == bwd);
  }
  CHECK(std::is_sorted(g.edges().begin(), g.edges().end(),
                       [](const auto& x, const auto& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); }));
  const LatticeGraph go(LatticeSpec(2, 3, Boundary::open));
  CHECK(go.step(0, 0, -1) == -1);
}

TEST_CASE("site validation and permutation") {
  const LatticeSpec spec(3, 4);
  CHECK_THROWS(validate_site(Site({0, 4, 0}), spec));
  CHECK_THROWS(validate_site(Site({0, 0}), spec));
  CHECK(permute_site(Site({1, 2, 3}), {2, 0, 1}) == Site({3, 1, 2}));
}
