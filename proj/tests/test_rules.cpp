#include <stdexcept>
#include <random>
#include <set>

#include "doctest.h"
#include "rih/json_io.hpp"
#include "rih/rules.hpp"

using namespace rih;

namespace {

TileRuleSet random_rules(int k, std::mt19937_64& rng, Boundary b) {
  TileRuleSet rs;
  for (int i = 0; i < k; ++i) rs.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      if (rng() % 3 == 0) rs.forbidden_h.insert({x, y});
      if (rng() % 3 == 0) rs.forbidden_v.insert({x, y});
    }
  rs.boundary = b;
  return rs;
}

std::vector<GridTiling> brute_valid(const TileRuleSet& rs, int n) {
  std::vector<GridTiling> out;
  const int cells = n * n;
  std::int64_t total = 1;
  for (int i = 0; i < cells; ++i) total *= rs.size();
  for (std::int64_t code = 0; code < total; ++code) {
    GridTiling g{n, std::vector<int>(static_cast<std::size_t>(cells))};
    std::int64_t c = code;
    for (int i = cells - 1; i >= 0; --i) {
      g.cells[static_cast<std::size_t>(i)] = static_cast<int>(c % rs.size());
      c /= rs.size();
    }
    if (check_tiling(rs, g).empty()) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("checker finds oriented violations") {
  TileRuleSet rs;
  rs.alphabet = {"a", "b"};
  rs.forbidden_h = {{0, 1}};  // a left of b
  GridTiling g{2, {0, 1, 1, 1}};  // bottom row a b, top row b b
  const auto v = check_tiling(rs, g);
  // periodic: (a,b) at the bottom; the wrap pair is (b,a), allowed
  REQUIRE(v.size() == 1);
  CHECK(v[0].horizontal);
  CHECK(v[0].x == 0);
  CHECK(v[0].y == 0);
  rs.boundary = Boundary::open;
  CHECK(check_tiling(rs, g).size() == 1);
}

TEST_CASE("enumeration agrees with the checker on small alphabets") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = 2 + trial % 2;
    const TileRuleSet rs = random_rules(k, rng, trial % 4 < 2 ? Boundary::periodic : Boundary::open);
    for (int n = 1; n <= 3; ++n) {
      const auto brute = brute_valid(rs, n);
      const auto e = enumerate_valid(rs, n);
      CHECK(e.count == static_cast<std::int64_t>(brute.size()));
      CHECK(e.tilings == brute);
    }
  }
}

TEST_CASE("enumeration limit and required tiles") {
  TileRuleSet rs;
  rs.alphabet = {"a", "b"};
  const auto e = enumerate_valid(rs, 2, 3);
  CHECK(e.count == 16);
  CHECK(e.tilings.size() == 3);
  CHECK(e.truncated);
  CHECK(enumerate_valid(rs, 2, 100, {1}).count == 15);
}

TEST_CASE("lift round trip on every valid tiling") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    const TileRuleSet rs = random_rules(2, rng, Boundary::periodic);
    const TileRuleSet lifted = lift_3x3(rs);
    CHECK(lifted.size() == 18);
    for (int n : {1, 2}) {
      const auto orig = enumerate_valid(rs, n);
      for (const auto& t : orig.tilings)
        for (int ox = 0; ox < 3; ++ox)
          for (int oy = 0; oy < 3; ++oy) {
            const GridTiling big = encode_lifted(t, ox, oy);
            CHECK(check_tiling(lifted, big).empty());
            const auto dec = decode_lifted(big, rs.size());
            REQUIRE(dec);
            CHECK(dec->ox == ox);
            CHECK(dec->oy == oy);
            CHECK(dec->original == t);
          }
      CHECK(enumerate_valid(lifted, 3 * n).count == 9 * orig.count);
    }
  }
}

TEST_CASE("single tile lifts to nine torus tilings") {
  TileRuleSet one;
  one.alphabet = {"a"};
  CHECK(enumerate_valid(lift_3x3(one), 3).count == 9);
  CHECK(enumerate_valid(lift_3x3(one), 4).count == 0);
}

TEST_CASE("decode rejects non-block grids") {
  GridTiling g{3, std::vector<int>(9, 4)};  // every cell a centre sub-tile
  CHECK_FALSE(decode_lifted(g, 1));
}

TEST_CASE("reflect then lift equals lift then reflect") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 6; ++trial) {
    const TileRuleSet rs = random_rules(2 + trial % 2, rng, Boundary::periodic);
    const TileRuleSet a = lift_3x3(reflect_horizontal(rs));
    const TileRuleSet b = reflect_horizontal(lift_3x3(rs), lifted_mirror(rs.size()));
    CHECK(a == b);
  }
}

TEST_CASE("subtile positions") {
  CHECK(subtile_dx(SubTile::SE) == 2);
  CHECK(subtile_dy(SubTile::SE) == 0);
  CHECK(subtile_dy(SubTile::N) == 2);
  CHECK(to_string(SubTile::NW) == "NW");
}

TEST_CASE("open-boundary frame rules, literal reading") {
  const TileRuleSet rs = open_bc_frame_ruleset();
  CHECK(rs.boundary == Boundary::open);
  for (int n = 3; n <= 5; ++n) {
    const auto e = enumerate_valid(rs, n);
    // frame, blank grid, and three truncated bottom rows
    CHECK(e.count == 5);
    CHECK(enumerate_valid(rs, n, 10, {rs.index("left-bc"), rs.index("right-bc")}).count == 1);
  }
}

TEST_CASE("rule set and grid json round trip") {
  std::mt19937_64 rng(61);
  const TileRuleSet rs = random_rules(3, rng, Boundary::open);
  CHECK(ruleset_from_json(to_json(rs)) == rs);
  const GridTiling g{2, {0, 1, 2, 0}};
  CHECK(grid_from_json(to_json(g, rs), rs) == g);
  CHECK_THROWS(ruleset_from_json(Json{{"alphabet", {"a", "a"}}}));
}
