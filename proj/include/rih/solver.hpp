#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rih/epr.hpp"
#include "rih/hamiltonian.hpp"
#include "rih/lattice.hpp"
#include "rih/linalg.hpp"
#include "rih/tiling.hpp"

namespace rih {

struct SolverOptions {
  int max_epr_slots = 12;                           // exact EPR components up to this many qubits
  std::int64_t cap = std::int64_t{1} << 22;         // largest embedded-2D space solved by Lanczos
  std::int64_t classical_cap = std::int64_t{1} << 24;  // largest diagonal embedded-2D space enumerated
  double tol = 1e-10;
};

struct Embedded2D {
  double value = 0.0;
  bool exact = true;
  std::string method = "none";  // none, frustration-free, classical, dense, lanczos, bound-only
  int components = 0;
  int largest_component = 0;
};

/// Minimum of sum over edges of (h_RI + v_RI) restricted to a tile sector.
Embedded2D embedded_2d_energy(const Tiling& t, const TiPlug& plug, const SolverOptions& opt = {});
Embedded2D embedded_2d_energy_codes(const LatticeGraph& g, const std::vector<std::uint8_t>& c1,
                                    const std::vector<std::uint8_t>& c2, const TiPlug& plug,
                                    const SolverOptions& opt = {});

enum class SectorMethod { exact_diag, component_exact, bound_only };
std::string to_string(SectorMethod m);

struct SectorEnergy {
  std::string id;
  double classical = 0.0;
  double epr = 0.0;
  double embedded2d = 0.0;
  double total = 0.0;
  SectorMethod method = SectorMethod::component_exact;
  ClassicalEnergy parts;
  EprEnergy epr1, epr2;
  Embedded2D embedded;
};

SectorEnergy tile_sector_energy(const Tiling& t, const TiPlug& plug, const SolverOptions& opt = {});

/// classical + EPR energy of one copy (h_tile + h_EPR + h_loop on that copy alone).
struct SingleCopyEnergy {
  double classical = 0.0;
  double epr = 0.0;
  double total = 0.0;
  bool exact = true;
};
SingleCopyEnergy single_copy_energy(const LatticeGraph& g, const std::vector<std::uint8_t>& codes,
                                    int max_epr_slots = 12);

/// Stable text id for a tiling: spec plus the tile codes of both copies.
std::string tiling_id(const Tiling& t);

/// Independent full-space check: the lattice Hamiltonian built edge by edge from the
/// assembled two-site term, minimised with no sector decomposition.
struct OracleModel {
  LatticeSpec spec;
  const TwoBodyTerm* term = nullptr;
  /// When set, every site is pinned to this tile index (into term.tile_dim) and only the
  /// quantum factors remain; otherwise the whole site space is kept.
  std::optional<std::vector<int>> sector;
};
double brute_force_oracle(const OracleModel& model, std::int64_t cap = std::int64_t{1} << 18,
                          const EigenOptions& eig = {});

enum class Decision { low, high, promise_violation };
std::string to_string(Decision d);

/// low when E0 <= p, high when E0 >= p + 1/q. The bounds must come from a certified search.
Decision decide_from_bounds(double lower, double upper, bool certified, double p, double q);

}  // namespace rih
