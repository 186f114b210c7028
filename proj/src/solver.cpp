#include "rih/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rih {

std::string to_string(SectorMethod m) {
  switch (m) {
    case SectorMethod::exact_diag: return "exact-diag";
    case SectorMethod::component_exact: return "component-exact";
    case SectorMethod::bound_only: return "bound-only";
  }
  return "?";
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::low: return "low";
    case Decision::high: return "high";
    case Decision::promise_violation: return "promise-violation";
  }
  return "?";
}

namespace {

Eigen::MatrixXd swap_conj(const Eigen::MatrixXd& h, int d) {
  Eigen::MatrixXd out(h.rows(), h.cols());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) out(b * d + a, e * d + c) = h(a * d + b, c * d + e);
  return out;
}

struct ActiveTerm {
  int a, b;                 // lattice sites, a is the more significant local factor
  const Eigen::MatrixXd* m; // d^2 x d^2
};

/// Exact minimum of a diagonal two-body cost by depth-first search with an incumbent.
double classical_minimum(int k, int d, const std::vector<std::vector<std::pair<int, const Eigen::MatrixXd*>>>& back,
                         double incumbent) {
  std::vector<int> x(static_cast<std::size_t>(k), 0);
  double best = incumbent;
  std::vector<double> partial(static_cast<std::size_t>(k) + 1, 0.0);
  // back[i]: terms (j, m) with j < i whose local order is (j, i).
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      best = std::min(best, partial[static_cast<std::size_t>(k)]);
      return;
    }
    for (int v = 0; v < d; ++v) {
      double c = partial[static_cast<std::size_t>(i)];
      for (const auto& [j, m] : back[static_cast<std::size_t>(i)]) {
        const int idx = x[static_cast<std::size_t>(j)] * d + v;
        c += (*m)(idx, idx);
      }
      if (c >= best - 1e-15) continue;
      x[static_cast<std::size_t>(i)] = v;
      partial[static_cast<std::size_t>(i) + 1] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace

Embedded2D embedded_2d_energy_codes(const LatticeGraph& g, const std::vector<std::uint8_t>& c1,
                                    const std::vector<std::uint8_t>& c2, const TiPlug& plug,
                                    const SolverOptions& opt) {
  Embedded2D out;
  const int d = plug.d;
  const bool h_zero = plug.h_ti.cwiseAbs().maxCoeff() == 0.0;
  const bool v_zero = plug.v_ti.cwiseAbs().maxCoeff() == 0.0;
  if (h_zero && v_zero) return out;

  const Eigen::MatrixXd h_rev = swap_conj(plug.h_ti, d);
  const Eigen::MatrixXd v_rev = swap_conj(plug.v_ti, d);
  // Orient every active term with its lower site index as the significant factor.
  const Eigen::MatrixXd* hu = &plug.h_ti;  // a left of b
  const Eigen::MatrixXd* hr = &h_rev;      // b left of a
  const Eigen::MatrixXd* vu = &plug.v_ti;
  const Eigen::MatrixXd* vr = &v_rev;

  std::vector<ActiveTerm> terms;
  for (const auto& e : g.edges()) {
    const auto a = static_cast<std::size_t>(e.a), b = static_cast<std::size_t>(e.b);
    const int r1 = number_relation(c1[a], c1[b]);
    const int r2 = number_relation(c2[a], c2[b]);
    if (!h_zero && r1 == 1) terms.push_back({e.a, e.b, hu});
    if (!h_zero && r1 == 2) terms.push_back({e.a, e.b, hr});
    if (!v_zero && r2 == 1) terms.push_back({e.a, e.b, vu});
    if (!v_zero && r2 == 2) terms.push_back({e.a, e.b, vr});
  }
  if (terms.empty()) return out;

  // Connected components of the active-term graph.
  const int N = g.num_sites();
  std::vector<int> parent(static_cast<std::size_t>(N));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] =
                                                         parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& t : terms) {
    const int ra = find(t.a), rb = find(t.b);
    if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
  }
  std::map<int, std::vector<int>> comp_terms;
  for (std::size_t i = 0; i < terms.size(); ++i) comp_terms[find(terms[i].a)].push_back(static_cast<int>(i));

  std::vector<std::string> methods;
  for (const auto& [root, ids] : comp_terms) {
    std::vector<int> sites;
    for (int i : ids) {
      sites.push_back(terms[static_cast<std::size_t>(i)].a);
      sites.push_back(terms[static_cast<std::size_t>(i)].b);
    }
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    const int k = static_cast<int>(sites.size());
    ++out.components;
    out.largest_component = std::max(out.largest_component, k);
    std::map<int, int> local;
    for (int i = 0; i < k; ++i) local[sites[static_cast<std::size_t>(i)]] = i;

    // Frustration-free certificate: a uniform product state reaching the sum of term minima.
    double lb = 0.0;
    for (int i : ids) lb += min_eigenvalue_dense(*terms[static_cast<std::size_t>(i)].m);
    double best_uniform = std::numeric_limits<double>::infinity();
    for (int j = 0; j < d; ++j) {
      double e = 0.0;
      for (int i : ids) e += (*terms[static_cast<std::size_t>(i)].m)(j * d + j, j * d + j);
      best_uniform = std::min(best_uniform, e);
    }
    if (best_uniform <= lb + 1e-12) {
      out.value += best_uniform;
      methods.push_back("frustration-free");
      continue;
    }

    const double log_dim = k * std::log2(double(d));
    bool diagonal = true;
    for (int i : ids) {
      Eigen::MatrixXd o = *terms[static_cast<std::size_t>(i)].m;
      o.diagonal().setZero();
      if (o.cwiseAbs().maxCoeff() != 0.0) diagonal = false;
    }
    if (diagonal && log_dim <= std::log2(double(opt.classical_cap)) + 1e-9) {
      std::vector<std::vector<std::pair<int, const Eigen::MatrixXd*>>> back(static_cast<std::size_t>(k));
      for (int i : ids) {
        const auto& t = terms[static_cast<std::size_t>(i)];
        const int la = local[t.a], lb2 = local[t.b];
        // t.a < t.b, so la < lb2 and the term is already (earlier, later).
        back[static_cast<std::size_t>(lb2)].emplace_back(la, t.m);
      }
      out.value += classical_minimum(k, d, back, best_uniform);
      methods.push_back("classical");
      continue;
    }

    if (log_dim > std::log2(double(opt.cap)) + 1e-9) {
      out.value += lb;
      out.exact = false;
      methods.push_back("bound-only");
      continue;
    }
    std::vector<int> dims(static_cast<std::size_t>(k), d);
    std::vector<CsrMatrix> locals;
    locals.reserve(ids.size());
    for (int i : ids) locals.push_back(CsrMatrix::from_dense(*terms[static_cast<std::size_t>(i)].m));
    std::vector<EdgeOperator> ops;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto& t = terms[static_cast<std::size_t>(ids[i])];
      ops.push_back({local[t.a], local[t.b], &locals[i]});
    }
    const std::int64_t dim = product_dimension(dims, opt.cap);
    EigenOptions eo;
    eo.tol = opt.tol;
    const auto r = min_eigenvalue([&](const double* x, double* y) { apply_edge_sum(dims, ops, x, y); }, dim, eo);
    out.value += r.value;
    methods.push_back(r.dense ? "dense" : "lanczos");
  }
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
  std::string m;
  for (const auto& s : methods) m += (m.empty() ? "" : "+") + s;
  out.method = m.empty() ? "none" : m;
  if (!out.exact) out.method = "bound-only";
  return out;
}

Embedded2D embedded_2d_energy(const Tiling& t, const TiPlug& plug, const SolverOptions& opt) {
  const LatticeGraph g(t.spec);
  return embedded_2d_energy_codes(g, t.codes(1), t.codes(2), plug, opt);
}

SingleCopyEnergy single_copy_energy(const LatticeGraph& g, const std::vector<std::uint8_t>& codes, int max_epr_slots) {
  SingleCopyEnergy e;
  e.classical = static_cast<double>(single_copy_classical(g, codes));
  const auto ep = epr_min_energy(epr_demand_graph_codes(g, codes), max_epr_slots);
  e.epr = ep.value;
  e.exact = !ep.bound_only;
  e.total = e.classical + e.epr;
  return e;
}

std::string tiling_id(const Tiling& t) {
  std::ostringstream os;
  os << "r" << t.spec.r << "n" << t.spec.n << (t.spec.boundary == Boundary::periodic ? "p" : "o") << ":";
  for (const auto& x : t.copy1) os << x.code();
  os << "/";
  for (const auto& x : t.copy2) os << x.code();
  return os.str();
}

SectorEnergy tile_sector_energy(const Tiling& t, const TiPlug& plug, const SolverOptions& opt) {
  t.validate();
  const LatticeGraph g(t.spec);
  const auto c1 = t.codes(1), c2 = t.codes(2);
  SectorEnergy s;
  s.id = tiling_id(t);
  s.parts = classical_energy(t);
  s.classical = static_cast<double>(s.parts.total());
  s.epr1 = epr_min_energy(epr_demand_graph_codes(g, c1, 1), opt.max_epr_slots);
  s.epr2 = epr_min_energy(epr_demand_graph_codes(g, c2, 2), opt.max_epr_slots);
  s.epr = s.epr1.value + s.epr2.value;
  s.embedded = embedded_2d_energy_codes(g, c1, c2, plug, opt);
  s.embedded2d = s.embedded.value;
  s.total = s.classical + s.epr + s.embedded2d;
  const bool exact = !s.epr1.bound_only && !s.epr2.bound_only && s.embedded.exact;
  s.method = exact ? SectorMethod::component_exact : SectorMethod::bound_only;
  return s;
}

double brute_force_oracle(const OracleModel& model, std::int64_t cap, const EigenOptions& eig) {
  if (!model.term) throw std::invalid_argument("oracle needs a term");
  const TwoBodyTerm& term = *model.term;
  const LatticeGraph g(model.spec);
  const int N = g.num_sites();
  std::vector<int> dims;
  std::vector<EdgeOperator> ops;
  std::map<std::pair<int, int>, CsrMatrix> blocks;
  if (model.sector) {
    const auto& tiles = *model.sector;
    if (static_cast<int>(tiles.size()) != N) throw std::invalid_argument("sector size mismatch");
    dims.assign(static_cast<std::size_t>(N), term.quantum_dim);
    for (const auto& e : g.edges()) {
      const auto key = std::make_pair(tiles[static_cast<std::size_t>(e.a)], tiles[static_cast<std::size_t>(e.b)]);
      if (!blocks.count(key)) blocks.emplace(key, term_block(term, key.first, key.second));
    }
    for (const auto& e : g.edges())
      ops.push_back({e.a, e.b,
                     &blocks.at({tiles[static_cast<std::size_t>(e.a)], tiles[static_cast<std::size_t>(e.b)]})});
  } else {
    dims.assign(static_cast<std::size_t>(N), term.site_dim());
    for (const auto& e : g.edges()) ops.push_back({e.a, e.b, &term.matrix});
  }
  const std::int64_t dim = product_dimension(dims, cap);
  return min_eigenvalue([&](const double* x, double* y) { apply_edge_sum(dims, ops, x, y); }, dim, eig).value;
}

Decision decide_from_bounds(double lower, double upper, bool certified, double p, double q) {
  if (!certified) throw std::runtime_error("decide needs a certified ground energy");
  if (q <= 0) throw std::invalid_argument("q must be positive");
  if (upper <= p + 1e-9) return Decision::low;
  if (lower >= p + 1.0 / q - 1e-9) return Decision::high;
  return Decision::promise_violation;
}

}  // namespace rih
