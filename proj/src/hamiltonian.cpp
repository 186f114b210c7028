#include "rih/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rih/tiling.hpp"

namespace rih {

// ---------------------------------------------------------------- plugs

TiPlug TiPlug::make(std::string id, int d, Eigen::MatrixXd h, Eigen::MatrixXd v) {
  if (d < 1) throw std::invalid_argument("plug dimension must be >= 1");
  const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
  for (const auto* m : {&h, &v}) {
    if (m->rows() != dd || m->cols() != dd) throw std::invalid_argument("plug matrix must be d^2 x d^2");
    if ((*m - m->transpose()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("plug matrix not symmetric");
    if (min_eigenvalue_dense(*m) < -1e-9) throw std::invalid_argument("plug matrix not positive semidefinite");
  }
  TiPlug p;
  p.id = std::move(id);
  p.d = d;
  p.h_ti = std::move(h);
  p.v_ti = std::move(v);
  return p;
}

bool TiPlug::diagonal() const {
  auto off = [](const Eigen::MatrixXd& m) {
    Eigen::MatrixXd o = m;
    o.diagonal().setZero();
    return o.cwiseAbs().maxCoeff() == 0.0;
  };
  return off(h_ti) && off(v_ti);
}

std::vector<TiPlug> toy_plugs() {
  std::vector<TiPlug> out;
  out.push_back(TiPlug::make("zero", 1, Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Zero(1, 1)));
  // Basis |00>, |01>, |10>, |11>.
  Eigen::MatrixXd odd = Eigen::MatrixXd::Zero(4, 4);
  odd(1, 1) = odd(2, 2) = 1;
  out.push_back(TiPlug::make("ff", 2, odd, odd));
  Eigen::MatrixXd even = Eigen::MatrixXd::Zero(4, 4);
  even(0, 0) = even(3, 3) = 1;
  out.push_back(TiPlug::make("afm", 2, even, Eigen::MatrixXd::Zero(4, 4)));
  Eigen::MatrixXd p01 = Eigen::MatrixXd::Zero(4, 4), p10 = Eigen::MatrixXd::Zero(4, 4);
  p01(1, 1) = 1;
  p10(2, 2) = 1;
  out.push_back(TiPlug::make("directed", 2, p01, p10));
  return out;
}

TiPlug toy_plug(const std::string& id) {
  for (auto& p : toy_plugs())
    if (p.id == id) return p;
  throw std::invalid_argument("unknown plug: " + id);
}

// ---------------------------------------------------------------- assembly

namespace {

/// Sparse rows keyed by column while a local block is accumulated.
using LocalRows = std::vector<std::map<std::uint32_t, double>>;

/// Adds coef * op on factors (fi, fj) of a product space with the given factor dims.
void add_two_factor(LocalRows& rows, const std::vector<int>& dims, int fi, int fj, const Eigen::MatrixXd& op,
                    double coef) {
  if (coef == 0.0) return;
  const int nf = static_cast<int>(dims.size());
  std::vector<std::int64_t> stride(static_cast<std::size_t>(nf));
  std::int64_t total = 1;
  for (int i = nf - 1; i >= 0; --i) {
    stride[static_cast<std::size_t>(i)] = total;
    total *= dims[static_cast<std::size_t>(i)];
  }
  const int di = dims[static_cast<std::size_t>(fi)], dj = dims[static_cast<std::size_t>(fj)];
  const std::int64_t si = stride[static_cast<std::size_t>(fi)], sj = stride[static_cast<std::size_t>(fj)];
  for (std::int64_t r = 0; r < total; ++r) {
    const int xi = static_cast<int>((r / si) % di);
    const int xj = static_cast<int>((r / sj) % dj);
    const std::int64_t base = r - xi * si - xj * sj;
    const int lr = xi * dj + xj;
    for (int yi = 0; yi < di; ++yi) {
      for (int yj = 0; yj < dj; ++yj) {
        const double v = op(lr, yi * dj + yj);
        if (v == 0.0) continue;
        rows[static_cast<std::size_t>(r)][static_cast<std::uint32_t>(base + yi * si + yj * sj)] += coef * v;
      }
    }
  }
}

/// (I - |Phi+><Phi+|)/2 on two qubits.
Eigen::MatrixXd half_epr_projector() {
  // Written out entrywise so every coefficient is an exact dyadic number.
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(4, 4);
  p(0, 0) = p(3, 3) = 0.25;
  p(1, 1) = p(2, 2) = 0.5;
  p(0, 3) = p(3, 0) = -0.25;
  return p;
}

Eigen::MatrixXd swap_conjugate(const Eigen::MatrixXd& h, int d) {
  Eigen::MatrixXd out(h.rows(), h.cols());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) out(b * d + a, e * d + c) = h(a * d + b, c * d + e);
  return out;
}

struct Block {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
};

Block freeze(const LocalRows& rows) {
  Block b;
  b.rows.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r])
      if (v != 0.0) b.rows[r].emplace_back(c, v);
  return b;
}

/// Emits the global CSR given per-tile-pair blocks and classical diagonals.
template <class BlockFor, class Diagonal>
CsrMatrix assemble(int tile_dim, int Q, BlockFor block_for, Diagonal diagonal) {
  const std::int64_t D = std::int64_t{tile_dim} * Q;
  CsrMatrix m;
  m.rows = m.cols = D * D;
  m.row_ptr.reserve(static_cast<std::size_t>(D * D) + 1);
  m.row_ptr.assign(1, 0);
  for (int au = 0; au < tile_dim; ++au) {
    for (int qu = 0; qu < Q; ++qu) {
      for (int av = 0; av < tile_dim; ++av) {
        const Block& blk = block_for(au, av);
        const double diag = diagonal(au, av);
        const std::int64_t col_base = std::int64_t{au} * Q * D + std::int64_t{av} * Q;
        for (int qv = 0; qv < Q; ++qv) {
          const std::uint32_t lrow = static_cast<std::uint32_t>(qu * Q + qv);
          bool diag_done = (diag == 0.0);
          auto emit = [&](std::uint32_t lc, double v) {
            if (v == 0.0) return;
            const std::int64_t col = col_base + std::int64_t(lc / Q) * D + (lc % Q);
            m.col.push_back(static_cast<std::uint32_t>(col));
            m.val.push_back(v);
          };
          for (const auto& [lc, v] : blk.rows[lrow]) {
            if (!diag_done && lc >= lrow) {
              if (lc == lrow) {
                emit(lc, v + diag);
                diag_done = true;
                continue;
              }
              emit(lrow, diag);
              diag_done = true;
            }
            emit(lc, v);
          }
          if (!diag_done) emit(lrow, diag);
          m.row_ptr.push_back(static_cast<std::int64_t>(m.val.size()));
        }
      }
    }
  }
  return m;
}

}  // namespace

TwoBodyTerm build_site_term(const TiPlug& plug, const TermCoefficients& k) {
  const SiteSpace space{plug.d};
  const int d = plug.d;
  const int Q = space.quantum_dim();
  // Two-site quantum factors: u.s1 u.s2 u.s1' u.s2' u.h v.s1 v.s2 v.s1' v.s2' v.h
  const std::vector<int> dims{2, 2, 2, 2, d, 2, 2, 2, 2, d};
  enum { US1 = 0, US2, US1P, US2P, UH, VS1, VS2, VS1P, VS2P, VH };
  const Eigen::MatrixXd P = half_epr_projector();
  const Eigen::MatrixXd h_rev = swap_conjugate(plug.h_ti, d);
  const Eigen::MatrixXd v_rev = swap_conjugate(plug.v_ti, d);

  // Quantum blocks depend only on the number relations of the two copies.
  std::vector<Block> blocks(9);
  for (int rel1 = 0; rel1 < 3; ++rel1) {
    for (int rel2 = 0; rel2 < 3; ++rel2) {
      LocalRows rows(static_cast<std::size_t>(Q) * Q);
      if (rel1 == 1) {
        add_two_factor(rows, dims, US2, VS1, P, k.epr);       // A^{u,v}
        add_two_factor(rows, dims, UH, VH, plug.h_ti, k.ri);  // u on the left
      } else if (rel1 == 2) {
        add_two_factor(rows, dims, VS2, US1, P, k.epr);       // A^{v,u}
        add_two_factor(rows, dims, UH, VH, h_rev, k.ri);      // S h_TI S: v on the left
      }
      if (rel2 == 1) {
        add_two_factor(rows, dims, US2P, VS1P, P, k.epr);
        add_two_factor(rows, dims, UH, VH, plug.v_ti, k.vri);
      } else if (rel2 == 2) {
        add_two_factor(rows, dims, VS2P, US1P, P, k.epr);
        add_two_factor(rows, dims, UH, VH, v_rev, k.vri);
      }
      blocks[static_cast<std::size_t>(rel1 * 3 + rel2)] = freeze(rows);
    }
  }

  auto block_for = [&](int au, int av) -> const Block& {
    const int rel1 = number_relation(au / 9, av / 9);
    const int rel2 = number_relation(au % 9, av % 9);
    return blocks[static_cast<std::size_t>(rel1 * 3 + rel2)];
  };
  auto diagonal = [&](int au, int av) {
    const int u1 = au / 9, u2 = au % 9, v1 = av / 9, v2 = av % 9;
    double e = 0.0;
    if (tile_rule(u1, v1)) e += k.tile;
    if (tile_rule(u2, v2)) e += k.tile;
    const bool same1 = u1 / 3 == v1 / 3, same2 = u2 / 3 == v2 / 3;
    if (!same1) e += k.loop;
    if (!same2) e += k.loop;
    if (same1 && same2) e += k.copy;
    return e;
  };

  TwoBodyTerm t;
  t.kind = "full";
  t.plug_id = plug.id;
  t.d = d;
  t.tile_dim = SiteSpace::tile_configs;
  t.quantum_dim = Q;
  t.coefficients = k;
  t.matrix = assemble(SiteSpace::tile_configs, Q, block_for, diagonal);
  return t;
}

TwoBodyTerm build_single_copy_term(const TermCoefficients& k) {
  const int Q = 4;
  const std::vector<int> dims{2, 2, 2, 2};  // u.s1 u.s2 v.s1 v.s2
  const Eigen::MatrixXd P = half_epr_projector();
  std::vector<Block> blocks(3);
  for (int rel = 0; rel < 3; ++rel) {
    LocalRows rows(16);
    if (rel == 1) add_two_factor(rows, dims, 1, 2, P, k.epr);
    if (rel == 2) add_two_factor(rows, dims, 3, 0, P, k.epr);
    blocks[static_cast<std::size_t>(rel)] = freeze(rows);
  }
  auto block_for = [&](int au, int av) -> const Block& {
    return blocks[static_cast<std::size_t>(number_relation(au, av))];
  };
  auto diagonal = [&](int au, int av) {
    double e = 0.0;
    if (tile_rule(au, av)) e += k.tile;
    if (au / 3 != av / 3) e += k.loop;
    return e;
  };
  TwoBodyTerm t;
  t.kind = "single_copy";
  t.d = 1;
  t.tile_dim = 9;
  t.quantum_dim = Q;
  t.coefficients = k;
  t.matrix = assemble(9, Q, block_for, diagonal);
  return t;
}

CsrMatrix term_block(const TwoBodyTerm& term, int tile_u, int tile_v) {
  const int Q = term.quantum_dim;
  const std::int64_t D = term.site_dim();
  if (tile_u < 0 || tile_u >= term.tile_dim || tile_v < 0 || tile_v >= term.tile_dim)
    throw std::invalid_argument("term_block: tile index out of range");
  CsrMatrix b;
  b.rows = b.cols = std::int64_t{Q} * Q;
  b.row_ptr.assign(1, 0);
  for (int qu = 0; qu < Q; ++qu) {
    for (int qv = 0; qv < Q; ++qv) {
      const std::int64_t row = (std::int64_t{tile_u} * Q + qu) * D + std::int64_t{tile_v} * Q + qv;
      const auto& M = term.matrix;
      for (std::int64_t k = M.row_ptr[static_cast<std::size_t>(row)]; k < M.row_ptr[static_cast<std::size_t>(row) + 1];
           ++k) {
        const std::int64_t c = M.col[static_cast<std::size_t>(k)];
        const std::int64_t cu = c / D, cv = c % D;
        if (cu / Q != tile_u || cv / Q != tile_v) throw std::logic_error("term is not tile-diagonal");
        b.col.push_back(static_cast<std::uint32_t>((cu % Q) * Q + cv % Q));
        b.val.push_back(M.val[static_cast<std::size_t>(k)]);
      }
      b.row_ptr.push_back(static_cast<std::int64_t>(b.val.size()));
    }
  }
  return b;
}

// ---------------------------------------------------------------- checks

SymmetryReport check_term_symmetries(const CsrMatrix& m, int site_dim) {
  SymmetryReport rep;
  const std::int64_t D = site_dim;
  if (m.rows != m.cols || m.rows != D * D) throw std::invalid_argument("matrix is not a two-site operator");
  rep.hermitian = true;
  rep.swap_symmetric = true;
  for (std::int64_t r = 0; r < m.rows; ++r) {
    const std::int64_t sr = (r % D) * D + r / D;
    for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(r)]; k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      const std::int64_t c = m.col[static_cast<std::size_t>(k)];
      const double v = m.val[static_cast<std::size_t>(k)];
      const double defect = std::abs(m.at(c, r) - v);
      rep.max_hermitian_defect = std::max(rep.max_hermitian_defect, defect);
      if (defect > 1e-12) rep.hermitian = false;
      const std::int64_t sc = (c % D) * D + c / D;
      if (m.at(sr, sc) != v) rep.swap_symmetric = false;
    }
  }
  // Smallest eigenvalue over connected components of the sparsity graph.
  std::vector<std::int64_t> parent(static_cast<std::size_t>(m.rows));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::int64_t x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::int64_t r = 0; r < m.rows; ++r)
    for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(r)]; k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      const std::int64_t a = find(r), b = find(m.col[static_cast<std::size_t>(k)]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::vector<std::pair<std::int64_t, std::int64_t>> members;
  members.reserve(static_cast<std::size_t>(m.rows));
  double min_eig = std::numeric_limits<double>::infinity();
  for (std::int64_t r = 0; r < m.rows; ++r) {
    members.emplace_back(find(r), r);
  }
  std::sort(members.begin(), members.end());
  for (std::size_t i = 0; i < members.size();) {
    std::size_t j = i;
    while (j < members.size() && members[j].first == members[i].first) ++j;
    const auto n = static_cast<Eigen::Index>(j - i);
    if (n == 1) {
      min_eig = std::min(min_eig, m.at(members[i].second, members[i].second));
    } else {
      if (n > 8192) throw std::runtime_error("PSD check: component too large for dense solve");
      Eigen::MatrixXd blk(n, n);
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
          blk(a, b) = m.at(members[i + static_cast<std::size_t>(a)].second, members[i + static_cast<std::size_t>(b)].second);
      min_eig = std::min(min_eig, min_eigenvalue_dense(0.5 * (blk + blk.transpose())));
    }
    i = j;
  }
  rep.min_eigenvalue = min_eig;
  rep.psd = min_eig >= -1e-9;
  return rep;
}

SymmetryReport check_term_symmetries(const TwoBodyTerm& term) {
  return check_term_symmetries(term.matrix, term.site_dim());
}

bool tile_diagonality_check(const CsrMatrix& m, int site_dim, int quantum_dim) {
  const std::int64_t D = site_dim, Q = quantum_dim;
  for (std::int64_t r = 0; r < m.rows; ++r) {
    const std::int64_t ru = r / D, rv = r % D;
    for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(r)]; k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      if (m.val[static_cast<std::size_t>(k)] == 0.0) continue;
      const std::int64_t c = m.col[static_cast<std::size_t>(k)];
      if ((c / D) / Q != ru / Q || (c % D) / Q != rv / Q) return false;
    }
  }
  return true;
}

bool tile_diagonality_check(const TwoBodyTerm& term) {
  return tile_diagonality_check(term.matrix, term.site_dim(), term.quantum_dim);
}

std::vector<double> global_matvec(const LatticeSpec& spec, const TwoBodyTerm& term, const std::vector<double>& state,
                                  std::int64_t cap) {
  const LatticeGraph g(spec);
  const std::vector<int> dims(static_cast<std::size_t>(g.num_sites()), term.site_dim());
  const std::int64_t dim = product_dimension(dims, cap);
  if (static_cast<std::int64_t>(state.size()) != dim) throw std::invalid_argument("state dimension mismatch");
  std::vector<EdgeOperator> ops;
  for (const auto& e : g.edges()) ops.push_back({e.a, e.b, &term.matrix});
  std::vector<double> out(state.size());
  apply_edge_sum(dims, ops, state.data(), out.data());
  return out;
}

// ---------------------------------------------------------------- export

std::uint64_t term_hash(const CsrMatrix& m) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(m.rows));
  for (std::int64_t r = 0; r < m.rows; ++r) {
    for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(r)]; k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      std::uint64_t bits;
      const double v = m.val[static_cast<std::size_t>(k)];
      std::memcpy(&bits, &v, sizeof bits);
      mix(static_cast<std::uint64_t>(r));
      mix(static_cast<std::uint64_t>(m.col[static_cast<std::size_t>(k)]));
      mix(bits);
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::vector<std::string> term_header(const TwoBodyTerm& term) {
  std::vector<std::string> c;
  if (term.kind == "full") {
    c.push_back("site basis (first factor most significant): T1(3) T2(3) T1'(3) T2'(3) s1(2) s2(2) s1'(2) s2'(2) H2D(" +
                std::to_string(term.d) + ")");
    c.push_back("plug: " + term.plug_id);
  } else {
    c.push_back("site basis (first factor most significant): T1(3) T2(3) s1(2) s2(2)");
  }
  c.push_back("two-site row index: idx_u * " + std::to_string(term.site_dim()) + " + idx_v");
  std::ostringstream os;
  const auto& k = term.coefficients;
  os << "coefficients: h_tile=" << k.tile << " h_EPR=" << k.epr << " h_loop=" << k.loop << " h_copy=" << k.copy
     << " h_RI=" << k.ri << " v_RI=" << k.vri;
  c.push_back(os.str());
  c.push_back("fnv1a64: " + hex64(term_hash(term.matrix)));
  return c;
}

void write_matrix_market(std::ostream& os, const CsrMatrix& m, const std::vector<std::string>& comments) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  for (const auto& c : comments) os << "% " << c << "\n";
  os << m.rows << " " << m.cols << " " << m.nnz() << "\n";
  os << std::setprecision(17);
  for (std::int64_t r = 0; r < m.rows; ++r)
    for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(r)]; k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k)
      os << (r + 1) << " " << (m.col[static_cast<std::size_t>(k)] + 1) << " " << m.val[static_cast<std::size_t>(k)]
         << "\n";
}

}  // namespace rih
