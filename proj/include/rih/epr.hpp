#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rih/lattice.hpp"
#include "rih/tiling.hpp"

namespace rih {

/// Qubit slot id: site * 2 + (0 for sigma1, 1 for sigma2).
inline int slot_id(int site, int qubit) { return site * 2 + (qubit - 1); }

/// Pairing demands (u.sigma2, v.sigma1) induced by one tile copy.
///
/// A demand is emitted for every edge whose numbers step forward along the
/// cycle 0 -> 1 -> 2 -> 0. The operator A^{u,v} is conditioned on numbers only,
/// so a different-colour edge with stepping numbers (already a rule-2
/// violation) still carries its projector. Same-colour same-number edges give a
/// marker and no demand.
struct EprDemandGraph {
  int num_sites = 0;
  int copy = 1;
  std::vector<std::pair<int, int>> demands;  // (sigma2 slot, sigma1 slot)
  std::vector<int> slot_degree;              // indexed by slot id
  std::vector<std::pair<int, int>> markers;  // same-colour same-number edges (site indices)

  int conflict_count() const;  // slots with degree >= 2
  /// Demand indices grouped by connected component of the slot graph.
  std::vector<std::vector<int>> components() const;
};

EprDemandGraph epr_demand_graph(const Tiling& t, int copy);
EprDemandGraph epr_demand_graph_codes(const LatticeGraph& g, const std::vector<std::uint8_t>& codes, int copy = 1);

struct EprEnergy {
  double value = 0.0;
  bool bound_only = false;
  int components = 0;
  int largest_component_slots = 0;
};

/// Ground energy of 16 * sum over demands of (I - |Phi+><Phi+|)/2 on its two slots.
///
/// Components with at most max_exact_slots qubits are solved exactly; larger
/// ones contribute a certified lower bound and set bound_only.
EprEnergy epr_min_energy(const EprDemandGraph& g, int max_exact_slots = 12);

/// Exact ground energy of one connected component given as local slot pairs over k slots.
double epr_component_energy(int k, const std::vector<std::pair<int, int>>& pairs);
/// Certified lower bound for one component (half-star and disjoint shared-slot pairs).
double epr_component_bound(int k, const std::vector<std::pair<int, int>>& pairs);

/// Dense 2^k construction of the same operator, for cross-checks on small k.
double epr_dense_oracle(int k, const std::vector<std::pair<int, int>>& pairs);

}  // namespace rih
