#include "rih/lattice.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rih {

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "open") return Boundary::open;
  throw std::invalid_argument("unknown boundary mode: " + s);
}

LatticeSpec::LatticeSpec(int r_, std::int64_t n_, Boundary b) : r(r_), n(n_), boundary(b) {
  if (r < 1) throw std::invalid_argument("lattice dimension r must be >= 1");
  // n = 2 periodic would make u+e_i and u-e_i coincide (multi-edges).
  if (n < 3) throw std::invalid_argument("lattice side n must be >= 3");
}

std::int64_t LatticeSpec::num_sites() const {
  std::int64_t total = 1;
  for (int i = 0; i < r; ++i) {
    if (total > std::numeric_limits<std::int64_t>::max() / n)
      throw std::overflow_error("lattice too large: n^r overflows");
    total *= n;
  }
  return total;
}

void validate_site(const Site& u, const LatticeSpec& spec) {
  if (u.dim() != spec.r) throw std::invalid_argument("site dimension does not match lattice");
  for (int c : u.coords)
    if (c < 0 || c >= spec.n) throw std::invalid_argument("site coordinate out of range");
}

std::int64_t lee_distance(const Site& x, const Site& y, const LatticeSpec& spec) {
  if (x.dim() != spec.r || y.dim() != spec.r)
    throw std::invalid_argument("lee_distance: dimension mismatch");
  std::int64_t d = 0;
  for (int i = 0; i < spec.r; ++i) {
    std::int64_t diff = std::abs(static_cast<std::int64_t>(x[i]) - y[i]);
    if (spec.boundary == Boundary::periodic) diff = std::min(diff, spec.n - diff);
    d += diff;
  }
  return d;
}

int coord_diff_count(const Site& u, const Site& w) {
  if (u.dim() != w.dim()) throw std::invalid_argument("coord_diff_count: dimension mismatch");
  int c = 0;
  for (int i = 0; i < u.dim(); ++i)
    if (u[i] != w[i]) ++c;
  return c;
}

std::int64_t site_index(const Site& u, const LatticeSpec& spec) {
  validate_site(u, spec);
  std::int64_t idx = 0;
  for (int c : u.coords) idx = idx * spec.n + c;
  return idx;
}

Site site_at(std::int64_t index, const LatticeSpec& spec) {
  std::vector<int> c(static_cast<std::size_t>(spec.r));
  for (int i = spec.r - 1; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] = static_cast<int>(index % spec.n);
    index /= spec.n;
  }
  return Site(std::move(c));
}

std::vector<Site> neighbors(const Site& u, const LatticeSpec& spec) {
  validate_site(u, spec);
  std::vector<Site> out;
  for (int i = 0; i < spec.r; ++i) {
    for (int dir : {-1, +1}) {
      std::int64_t c = u[i] + dir;
      if (spec.boundary == Boundary::periodic) {
        c = (c + spec.n) % spec.n;
      } else if (c < 0 || c >= spec.n) {
        continue;
      }
      Site v = u;
      v.coords[static_cast<std::size_t>(i)] = static_cast<int>(c);
      out.push_back(std::move(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> edges(const LatticeSpec& spec) {
  LatticeGraph g(spec);
  std::vector<Edge> out;
  out.reserve(g.edges().size());
  for (const auto& e : g.edges()) out.push_back({site_at(e.a, spec), site_at(e.b, spec)});
  return out;
}

Site permute_site(const Site& u, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != u.dim())
    throw std::invalid_argument("permute_site: permutation length mismatch");
  std::vector<int> c(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) c[i] = u[perm[i]];
  return Site(std::move(c));
}

LatticeGraph::LatticeGraph(const LatticeSpec& spec) : spec_(spec) {
  const std::int64_t total = spec.num_sites();
  if (total > (std::int64_t{1} << 24))
    throw std::invalid_argument("LatticeGraph: lattice too large to materialise");
  num_sites_ = static_cast<int>(total);
  const int r = spec.r;
  const int n = static_cast<int>(spec.n);
  coords_.resize(static_cast<std::size_t>(num_sites_));
  steps_.assign(static_cast<std::size_t>(num_sites_) * r * 2, -1);
  std::vector<int> stride(static_cast<std::size_t>(r));
  {
    int s = 1;
    for (int i = r - 1; i >= 0; --i) {
      stride[static_cast<std::size_t>(i)] = s;
      s *= n;
    }
  }
  for (int u = 0; u < num_sites_; ++u) {
    auto& c = coords_[static_cast<std::size_t>(u)];
    c.resize(static_cast<std::size_t>(r));
    int rem = u;
    for (int i = r - 1; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] = rem % n;
      rem /= n;
    }
    for (int i = 0; i < r; ++i) {
      const int ci = c[static_cast<std::size_t>(i)];
      const int si = stride[static_cast<std::size_t>(i)];
      int up = -1, down = -1;
      if (ci + 1 < n) up = u + si;
      else if (spec.boundary == Boundary::periodic) up = u - (n - 1) * si;
      if (ci - 1 >= 0) down = u - si;
      else if (spec.boundary == Boundary::periodic) down = u + (n - 1) * si;
      steps_[(static_cast<std::size_t>(u) * r + i) * 2 + 1] = up;
      steps_[(static_cast<std::size_t>(u) * r + i) * 2 + 0] = down;
    }
  }
  for (int u = 0; u < num_sites_; ++u) {
    for (int i = 0; i < r; ++i) {
      const int v = step(u, i, +1);
      if (v < 0) continue;
      IndexedEdge e{std::min(u, v), std::max(u, v), i, u < v};
      edges_.push_back(e);
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const IndexedEdge& x, const IndexedEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  nbrs_.resize(static_cast<std::size_t>(num_sites_));
  inc_.resize(static_cast<std::size_t>(num_sites_));
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    nbrs_[static_cast<std::size_t>(e.a)].push_back(e.b);
    inc_[static_cast<std::size_t>(e.a)].push_back(static_cast<int>(k));
    nbrs_[static_cast<std::size_t>(e.b)].push_back(e.a);
    inc_[static_cast<std::size_t>(e.b)].push_back(static_cast<int>(k));
  }
}

int LatticeGraph::step(int u, int dim, int dir) const {
  return steps_[(static_cast<std::size_t>(u) * spec_.r + dim) * 2 + (dir > 0 ? 1 : 0)];
}

}  // namespace rih
