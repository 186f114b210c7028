#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rih/hamiltonian.hpp"
#include "rih/lattice.hpp"
#include "rih/solver.hpp"
#include "rih/tiling.hpp"

namespace rih {

using Codes = std::vector<std::uint8_t>;
inline constexpr std::uint8_t kUnassigned = 255;

/// Restricts which two-copy sectors count. Must be invariant under per-copy colour
/// permutations and number shifts when symmetry reduction is on.
using PairFilter = std::function<bool(const LatticeGraph&, const Codes& c1, const Codes& c2)>;

struct SearchOptions {
  std::int64_t node_budget = std::int64_t{1} << 40;
  /// Pin the first visited site to (red, 0) in each copy.
  bool symmetry_reduction = true;
  /// Enumeration mode: collect every sector with total < threshold instead of minimising.
  std::optional<double> threshold;
  PairFilter filter;
  /// Filtered minimisation widens its threshold up to this value and then reports only a lower bound.
  double filter_ceiling = std::numeric_limits<double>::infinity();
  /// Sites are visited in lexicographic order of their permuted coordinates.
  std::vector<int> coordinate_permutation;
  SolverOptions solver;
  std::size_t max_records = 1'000'000;
};

struct SearchStats {
  std::int64_t nodes = 0;
  std::int64_t pruned = 0;
  std::int64_t leaves = 0;
  std::int64_t single_copy_candidates = 0;
  std::int64_t pairs_examined = 0;
  std::int64_t sectors_evaluated = 0;
  double seconds = 0.0;
};

struct SectorRecord {
  Codes c1, c2;
  double e1 = 0.0, e2 = 0.0;  // single-copy classical + EPR
  double coupling = 0.0;
  double embedded2d = 0.0;
  double total = 0.0;
  bool exact = true;

  Tiling tiling(const LatticeSpec& spec) const;
};

struct EnergyReport {
  LatticeSpec spec;
  std::string plug_id;
  std::int64_t n0 = 0;
  double global_min = 0.0;   // minimisation mode
  double lower_bound = 0.0;  // certified lower bound on E0 (on the filtered set when a filter is given)
  double upper_bound = 0.0;  // energy of the best sector found
  bool complete = false;     // search finished within budget
  bool certified = false;    // complete and every relevant sector solved exactly
  std::optional<double> threshold;
  double single_copy_min = 0.0;
  std::optional<Tiling> argmin;
  std::vector<SectorRecord> records;  // minimisers, or every sector below the threshold
  bool records_truncated = false;
  SearchStats stats;
};

EnergyReport ground_energy_search(const LatticeSpec& spec, const TiPlug& plug, const SearchOptions& opt = {});

/// Depth-first enumeration of single-copy tilings with the half-star lower bound.
class SingleCopySearch {
 public:
  SingleCopySearch(const LatticeGraph& g, std::vector<int> order, bool fix_first);

  /// prune(lb, codes, depth) -> true cuts the subtree; leaf(codes) sees every surviving total assignment.
  /// Returns false when the node budget ran out.
  bool run(const std::function<bool(double, const Codes&, int)>& prune, const std::function<void(const Codes&)>& leaf,
           std::int64_t node_budget, SearchStats& stats);

  /// Half-star lower bound of classical + EPR energy over all completions of a partial assignment.
  double lower_bound(const Codes& partial) const;
  const std::vector<int>& order() const { return order_; }

 private:
  double star(int u, int code, const Codes& codes) const;
  double star_min(int u, const Codes& codes) const;

  const LatticeGraph& g_;
  std::vector<int> order_;
  bool fix_first_;
};

/// Visiting order for a coordinate permutation (identity when empty).
std::vector<int> site_order(const LatticeGraph& g, const std::vector<int>& perm);

}  // namespace rih
