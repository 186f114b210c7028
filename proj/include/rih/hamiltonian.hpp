#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rih/lattice.hpp"
#include "rih/linalg.hpp"

namespace rih {

/// Single-site basis. Factor order, first most significant:
/// T1(3) T2(3) T1'(3) T2'(3) sigma1(2) sigma2(2) sigma1'(2) sigma2'(2) H2D(d).
struct SiteSpace {
  int d = 1;

  static constexpr int tile_configs = 81;
  int quantum_dim() const { return 16 * d; }
  int dim() const { return tile_configs * quantum_dim(); }

  /// Tile-factor index ((c1 * 3 + m1) * 3 + c2) * 3 + m2, i.e. code1 * 9 + code2.
  static int tile_index(int code1, int code2) { return code1 * 9 + code2; }
  int quantum_index(int s1, int s2, int s1p, int s2p, int h) const {
    return (((s1 * 2 + s2) * 2 + s1p) * 2 + s2p) * d + h;
  }
  int index(int code1, int code2, int s1, int s2, int s1p, int s2p, int h) const {
    return tile_index(code1, code2) * quantum_dim() + quantum_index(s1, s2, s1p, s2p, h);
  }
};

/// Translation-invariant two-body plug (h_TI horizontal, v_TI vertical) on a d-level site.
/// Both matrices act on d^2 with the left (or lower) site as the more significant factor.
struct TiPlug {
  std::string id;
  int d = 1;
  Eigen::MatrixXd h_ti;
  Eigen::MatrixXd v_ti;
  /// Minimum side length for which the plug is meant to be used; 0 when unspecified.
  std::int64_t n0 = 0;

  /// Validates symmetry (1e-12) and positive semidefiniteness (1e-9); throws std::invalid_argument.
  static TiPlug make(std::string id, int d, Eigen::MatrixXd h, Eigen::MatrixXd v);
  bool diagonal() const;
};

/// zero (d=1), ff (frustration-free, d=2), afm (frustrated, d=2), directed (no reflection symmetry, d=2).
std::vector<TiPlug> toy_plugs();
TiPlug toy_plug(const std::string& id);

/// Summand weights of the two-body term. The defaults are the construction's; other values
/// exist for mutation tests.
struct TermCoefficients {
  double tile = 8;
  double epr = 16;
  double loop = 2;
  double copy = 1;
  double ri = 1;
  double vri = 1;

  friend bool operator==(const TermCoefficients&, const TermCoefficients&) = default;
};

struct TwoBodyTerm {
  std::string kind;     // "full" or "single_copy"
  std::string plug_id;  // empty for single_copy
  int d = 1;
  int tile_dim = 81;    // tile configurations per site
  int quantum_dim = 16; // quantum factor dimension per site
  int site_dim() const { return tile_dim * quantum_dim; }
  TermCoefficients coefficients;
  CsrMatrix matrix;     // rows indexed idx_u * site_dim + idx_v
};

TwoBodyTerm build_site_term(const TiPlug& plug, const TermCoefficients& coeffs = {});

/// One tile copy with its qubits: site basis T1(3) T2(3) sigma1(2) sigma2(2), terms h_tile + h_EPR + h_loop.
TwoBodyTerm build_single_copy_term(const TermCoefficients& coeffs = {});

/// Quantum block of the term at fixed tile configurations, rows q_u * quantum_dim + q_v.
CsrMatrix term_block(const TwoBodyTerm& term, int tile_u, int tile_v);

struct SymmetryReport {
  bool hermitian = false;
  bool psd = false;
  bool swap_symmetric = false;
  double min_eigenvalue = 0.0;
  double max_hermitian_defect = 0.0;
  bool ok() const { return hermitian && psd && swap_symmetric; }
};

SymmetryReport check_term_symmetries(const CsrMatrix& m, int site_dim);
SymmetryReport check_term_symmetries(const TwoBodyTerm& term);

/// True iff no entry connects different tile configurations on either site.
bool tile_diagonality_check(const CsrMatrix& m, int site_dim, int quantum_dim);
bool tile_diagonality_check(const TwoBodyTerm& term);

/// Applies sum over lattice edges of term^{u,v} to a state on (site_dim)^N.
std::vector<double> global_matvec(const LatticeSpec& spec, const TwoBodyTerm& term, const std::vector<double>& state,
                                  std::int64_t cap = std::int64_t{1} << 26);

/// FNV-1a over (rows, then row, col, value bits per entry), all little-endian 64-bit.
std::uint64_t term_hash(const CsrMatrix& m);
std::string hex64(std::uint64_t v);

void write_matrix_market(std::ostream& os, const CsrMatrix& m, const std::vector<std::string>& comments);
std::vector<std::string> term_header(const TwoBodyTerm& term);

}  // namespace rih
