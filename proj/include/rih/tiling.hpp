#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rih/lattice.hpp"

namespace rih {

enum class Color : std::uint8_t { red = 0, yellow = 1, blue = 2 };

std::string to_string(Color c);
Color color_from_string(const std::string& s);

struct Tile {
  Color color = Color::red;
  int number = 0;  // 0, 1, 2

  /// color * 3 + number, in [0, 9).
  int code() const { return static_cast<int>(color) * 3 + number; }
  static Tile from_code(int code);

  friend bool operator==(const Tile&, const Tile&) = default;
};

/// Two tile copies per site, stored in lexicographic site order.
struct Tiling {
  LatticeSpec spec;
  std::vector<Tile> copy1;
  std::vector<Tile> copy2;

  Tiling() = default;
  Tiling(LatticeSpec s, std::vector<Tile> c1, std::vector<Tile> c2);

  /// copy is 1 or 2.
  const std::vector<Tile>& copy(int c) const;
  std::vector<Tile>& copy(int c);
  /// Tile codes of one copy, one byte per site.
  std::vector<std::uint8_t> codes(int c) const;
  void validate() const;
};

struct RuleViolation {
  Edge edge;
  int rule;  // 1: same colour and same number; 2: different colour and different number
};

struct ClassificationFlags {
  bool looped = false;
  bool has_turn = false;
  bool uniformly_directed = false;
  int direction = -1;  // valid when uniformly_directed
  bool numbered_consistently = false;
};

struct ClassicalEnergy {
  std::int64_t tile1 = 0, tile2 = 0;
  std::int64_t loop1 = 0, loop2 = 0;
  std::int64_t copy = 0;
  std::int64_t total() const { return tile1 + tile2 + loop1 + loop2 + copy; }
};

/// Edge-level rule check on raw codes. 0 when legal, otherwise the failing rule.
inline int tile_rule(int code_a, int code_b) {
  const bool same_color = code_a / 3 == code_b / 3;
  const bool same_number = code_a % 3 == code_b % 3;
  if (same_color && same_number) return 1;
  if (!same_color && !same_number) return 2;
  return 0;
}

/// Diagonal cost of h_tile + h_loop on one edge of one copy.
inline int edge_classical_cost(int code_a, int code_b) {
  int c = tile_rule(code_a, code_b) ? 8 : 0;
  if (code_a / 3 != code_b / 3) c += 2;
  return c;
}

/// (m_b - m_a) mod 3: 1 means a -> b along the number cycle, 2 means b -> a.
inline int number_relation(int code_a, int code_b) { return ((code_b % 3) - (code_a % 3) + 3) % 3; }

std::vector<RuleViolation> rule_violations(const Tiling& t, int copy);
int same_color_degree(const Tiling& t, int copy, const Site& u);
std::vector<int> same_color_degrees(const LatticeGraph& g, const std::vector<std::uint8_t>& codes);
ClassificationFlags classify(const Tiling& t, int copy);
ClassificationFlags classify_codes(const LatticeGraph& g, const std::vector<std::uint8_t>& codes);

/// Colour (sum of other coordinates) mod 3, number u_dir mod 3. Periodic mode needs n % 3 == 0.
Tiling striped_witness(const LatticeSpec& spec, int copy1_dir, int copy2_dir);
std::vector<std::uint8_t> striped_copy(const LatticeGraph& g, int dir);

ClassicalEnergy classical_energy(const Tiling& t);
std::int64_t single_copy_classical(const LatticeGraph& g, const std::vector<std::uint8_t>& codes);
std::int64_t copy_coupling(const LatticeGraph& g, const std::vector<std::uint8_t>& c1,
                           const std::vector<std::uint8_t>& c2);

/// 2 n^r r - sum n_u + 4 sum floor(n_u / 3), with 2r replaced by the actual degree on open lattices.
std::int64_t h1lb_bound(const Tiling& t, int copy);
std::int64_t h1lb_bound_codes(const LatticeGraph& g, const std::vector<std::uint8_t>& codes);

/// Same-colour connected components; for looped turn-free copies each is a straight full-length loop.
struct ColorLoop {
  std::vector<int> sites;
  int axis = -1;  // -1 when the component is not a straight axis-aligned loop
};
std::vector<ColorLoop> color_loops(const LatticeGraph& g, const std::vector<std::uint8_t>& codes);

/// Apply a coordinate permutation: the tile at site u moves to permute_site(u, perm).
Tiling permute_tiling(const Tiling& t, const std::vector<int>& perm);
/// Cyclic translation by shift (periodic lattices only).
Tiling translate_tiling(const Tiling& t, const std::vector<int>& shift);

}  // namespace rih
