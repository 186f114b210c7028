#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rih/lattice.hpp"

namespace rih {

/// Translation-invariant 2D tile rules. Orientation matters: forbidden_h holds
/// (left, right) pairs and forbidden_v holds (below, above) pairs. Row 0 is the bottom row.
struct TileRuleSet {
  std::vector<std::string> alphabet;
  std::set<std::pair<int, int>> forbidden_h;
  std::set<std::pair<int, int>> forbidden_v;
  Boundary boundary = Boundary::periodic;

  int size() const { return static_cast<int>(alphabet.size()); }
  int index(const std::string& name) const;
  void validate() const;

  friend bool operator==(const TileRuleSet&, const TileRuleSet&) = default;
};

/// n x n grid, cells[y * n + x], y = 0 at the bottom.
struct GridTiling {
  int n = 0;
  std::vector<int> cells;

  int at(int x, int y) const { return cells[static_cast<std::size_t>(y * n + x)]; }
  friend bool operator==(const GridTiling&, const GridTiling&) = default;
  friend auto operator<=>(const GridTiling&, const GridTiling&) = default;
};

struct GridViolation {
  int x = 0, y = 0;  // first cell of the pair
  bool horizontal = true;
  int first = 0, second = 0;
};

std::vector<GridViolation> check_tiling(const TileRuleSet& rs, const GridTiling& g);

struct Enumeration {
  std::vector<GridTiling> tilings;  // lexicographic by rows, at most `limit`
  std::int64_t count = 0;           // total number of valid tilings
  bool truncated = false;
};

/// Row-by-row transfer enumeration. require_present lists tiles that must each appear somewhere.
Enumeration enumerate_valid(const TileRuleSet& rs, int n, std::size_t limit = 1'000'000,
                            const std::vector<int>& require_present = {});

/// Sub-tile positions inside a 3x3 block, as (dx, dy) with dy = 0 the bottom row.
enum class SubTile { SW, S, SE, W, C, E, NW, N, NE };
std::string to_string(SubTile s);
int subtile_dx(SubTile s);
int subtile_dy(SubTile s);

/// Each tile becomes nine sub-tiles "<t>@<pos>" (index t * 9 + pos) forming a rigid 3x3 block.
/// Inside a block only the block's own layout is allowed; across blocks facing borders must
/// align and carry a pair the original rules allow.
TileRuleSet lift_3x3(const TileRuleSet& rs);

/// Offset (ox, oy) of the block grid plus the decoded original tiling, when the lifted grid
/// is a consistent block pattern.
struct DecodedLift {
  int ox = 0, oy = 0;
  GridTiling original;
};
std::optional<DecodedLift> decode_lifted(const GridTiling& lifted, int original_alphabet);
GridTiling encode_lifted(const GridTiling& original, int ox, int oy);

/// Mirror left-right. relabel maps each tile to its mirror image (identity when empty).
TileRuleSet reflect_horizontal(const TileRuleSet& rs, const std::vector<int>& relabel = {});
/// Mirror image of lifted sub-tiles: W <-> E, NW <-> NE, SW <-> SE.
std::vector<int> lifted_mirror(int original_alphabet);

/// The open-boundary frame tiles: left-bc, bottom-bc, right-bc, blank.
TileRuleSet open_bc_frame_ruleset();

}  // namespace rih
