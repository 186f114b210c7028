#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rih {

enum class Boundary { periodic, open };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Hypercubic lattice of side n in r dimensions.
struct LatticeSpec {
  int r = 2;
  std::int64_t n = 3;
  Boundary boundary = Boundary::periodic;

  LatticeSpec() = default;
  LatticeSpec(int r_, std::int64_t n_, Boundary b = Boundary::periodic);

  /// n^r; throws std::overflow_error when it does not fit in 63 bits.
  std::int64_t num_sites() const;

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

/// A lattice site with canonical (reduced) coordinates.
struct Site {
  std::vector<int> coords;

  Site() = default;
  explicit Site(std::vector<int> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  int operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }

  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};

/// Unordered nearest-neighbour pair, stored with a < b.
struct Edge {
  Site a;
  Site b;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::int64_t lee_distance(const Site& x, const Site& y, const LatticeSpec& spec);
std::vector<Site> neighbors(const Site& u, const LatticeSpec& spec);
std::vector<Edge> edges(const LatticeSpec& spec);
int coord_diff_count(const Site& u, const Site& w);

/// Lexicographic index, first coordinate most significant.
std::int64_t site_index(const Site& u, const LatticeSpec& spec);
Site site_at(std::int64_t index, const LatticeSpec& spec);
void validate_site(const Site& u, const LatticeSpec& spec);

/// Relabel coordinates: result[i] = u[perm[i]].
Site permute_site(const Site& u, const std::vector<int>& perm);

/// Index-based adjacency for the hot paths (search, matvec, classification).
/// Sites are numbered lexicographically; edges are sorted by (a, b) with a < b.
class LatticeGraph {
 public:
  struct IndexedEdge {
    int a;
    int b;
    int dim;      // coordinate along which a and b differ
    bool a_low;   // true when b = a + e_dim (mod n); false when the edge wraps the other way
  };

  explicit LatticeGraph(const LatticeSpec& spec);

  const LatticeSpec& spec() const { return spec_; }
  int num_sites() const { return num_sites_; }
  const std::vector<IndexedEdge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int u) const { return nbrs_[static_cast<std::size_t>(u)]; }
  /// Edge ids incident to u, parallel to neighbors(u).
  const std::vector<int>& incident(int u) const { return inc_[static_cast<std::size_t>(u)]; }
  const std::vector<int>& coords(int u) const { return coords_[static_cast<std::size_t>(u)]; }
  /// Neighbour of u displaced by +1 (dir=+1) or -1 along dim, or -1 when absent (open boundary).
  int step(int u, int dim, int dir) const;

 private:
  LatticeSpec spec_;
  int num_sites_ = 0;
  std::vector<std::vector<int>> coords_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<std::vector<int>> inc_;
  std::vector<IndexedEdge> edges_;
  std::vector<int> steps_;  // [u][dim][0/1]
};

}  // namespace rih
