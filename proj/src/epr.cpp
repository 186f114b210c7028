#include "rih/epr.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "rih/linalg.hpp"

namespace rih {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[static_cast<std::size_t>(x)] != x) {
      p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
      x = p[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

int EprDemandGraph::conflict_count() const {
  return static_cast<int>(std::count_if(slot_degree.begin(), slot_degree.end(), [](int d) { return d >= 2; }));
}

std::vector<std::vector<int>> EprDemandGraph::components() const {
  UnionFind uf(2 * num_sites);
  for (const auto& [a, b] : demands) uf.unite(a, b);
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < demands.size(); ++i) groups[uf.find(demands[i].first)].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [root, ids] : groups) out.push_back(std::move(ids));
  std::sort(out.begin(), out.end());
  return out;
}

EprDemandGraph epr_demand_graph_codes(const LatticeGraph& g, const std::vector<std::uint8_t>& codes, int copy) {
  EprDemandGraph out;
  out.num_sites = g.num_sites();
  out.copy = copy;
  out.slot_degree.assign(static_cast<std::size_t>(2 * g.num_sites()), 0);
  for (const auto& e : g.edges()) {
    const int ca = codes[static_cast<std::size_t>(e.a)];
    const int cb = codes[static_cast<std::size_t>(e.b)];
    const int rel = number_relation(ca, cb);
    int s2 = -1, s1 = -1;
    if (rel == 1) {
      s2 = slot_id(e.a, 2);
      s1 = slot_id(e.b, 1);
    } else if (rel == 2) {
      s2 = slot_id(e.b, 2);
      s1 = slot_id(e.a, 1);
    } else {
      if (ca / 3 == cb / 3) out.markers.emplace_back(e.a, e.b);
      continue;
    }
    out.demands.emplace_back(s2, s1);
    ++out.slot_degree[static_cast<std::size_t>(s2)];
    ++out.slot_degree[static_cast<std::size_t>(s1)];
  }
  return out;
}

EprDemandGraph epr_demand_graph(const Tiling& t, int copy) {
  const LatticeGraph g(t.spec);
  return epr_demand_graph_codes(g, t.codes(copy), copy);
}

double epr_component_energy(int k, const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) return 0.0;
  if (k > 30) throw std::invalid_argument("epr component too large for exact solve");
  // Rotating every sigma1 slot by Y turns 16 (I - |Phi+><Phi+|)/2 into 6 + 2 (XX + YY + ZZ),
  // an antiferromagnetic Heisenberg bond. Total S_z is conserved and the ground
  // state lies in the lowest |S_z| sector.
  const int up = k / 2;
  std::vector<std::uint32_t> states;
  for (std::uint32_t s = 0; s < (1u << k); ++s)
    if (__builtin_popcount(s) == up) states.push_back(s);
  std::map<std::uint32_t, std::uint32_t> index;
  for (std::uint32_t i = 0; i < states.size(); ++i) index[states[i]] = i;

  const auto dim = static_cast<Eigen::Index>(states.size());
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(states.size());
  for (std::size_t r = 0; r < states.size(); ++r) {
    const std::uint32_t s = states[r];
    double diag = 0.0;
    for (const auto& [i, j] : pairs) {
      const bool bi = (s >> i) & 1u, bj = (s >> j) & 1u;
      diag += 6.0 + (bi == bj ? 2.0 : -2.0);
      if (bi != bj) rows[r].emplace_back(index.at(s ^ (1u << i) ^ (1u << j)), 4.0);
    }
    rows[r].emplace_back(static_cast<std::uint32_t>(r), diag);
  }
  CsrMatrix m;
  m.rows = m.cols = dim;
  m.row_ptr.assign(1, 0);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    std::uint32_t last = UINT32_MAX;
    for (const auto& [c, v] : row) {
      if (c == last) {
        m.val.back() += v;
      } else {
        m.col.push_back(c);
        m.val.push_back(v);
        last = c;
      }
    }
    m.row_ptr.push_back(static_cast<std::int64_t>(m.val.size()));
  }
  EigenOptions opt;
  opt.dense_below = 1024;
  return min_eigenvalue(m, opt).value;
}

double epr_component_bound(int k, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> deg(static_cast<std::size_t>(k), 0);
  for (const auto& [a, b] : pairs) {
    ++deg[static_cast<std::size_t>(a)];
    ++deg[static_cast<std::size_t>(b)];
  }
  // Split every bond in half between its endpoints; a star of j bonds has ground energy 4 (j - 1).
  double half_star = 0.0;
  for (int d : deg) half_star += 2.0 * std::max(0, d - 1);

  // Disjoint pairs of bonds sharing a slot each cost at least 4.
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    incident[static_cast<std::size_t>(pairs[i].first)].push_back(static_cast<int>(i));
    incident[static_cast<std::size_t>(pairs[i].second)].push_back(static_cast<int>(i));
  }
  std::vector<char> used(pairs.size(), 0);
  int disjoint = 0;
  for (int s = 0; s < k; ++s) {
    int pending = -1;
    for (int d : incident[static_cast<std::size_t>(s)]) {
      if (used[static_cast<std::size_t>(d)]) continue;
      if (pending < 0) {
        pending = d;
        continue;
      }
      const auto& p = pairs[static_cast<std::size_t>(pending)];
      const auto& q = pairs[static_cast<std::size_t>(d)];
      const int po = p.first == s ? p.second : p.first;
      const int qo = q.first == s ? q.second : q.first;
      if (po == qo) continue;
      used[static_cast<std::size_t>(pending)] = used[static_cast<std::size_t>(d)] = 1;
      ++disjoint;
      pending = -1;
    }
  }
  return std::max(half_star, 4.0 * disjoint);
}

double epr_dense_oracle(int k, const std::vector<std::pair<int, int>>& pairs) {
  if (k > 12) throw std::invalid_argument("dense oracle limited to 12 qubits");
  const std::int64_t dim = std::int64_t{1} << k;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  // Qubit i is bit (k - 1 - i), first qubit most significant.
  for (std::int64_t s = 0; s < dim; ++s) {
    for (const auto& [i, j] : pairs) {
      const int bi = static_cast<int>((s >> (k - 1 - i)) & 1);
      const int bj = static_cast<int>((s >> (k - 1 - j)) & 1);
      // 16 (I - |Phi+><Phi+|)/2 in the basis 00, 01, 10, 11.
      h(s, s) += (bi == bj) ? 4.0 : 8.0;
      if (bi == bj) {
        const std::int64_t t = s ^ (std::int64_t{1} << (k - 1 - i)) ^ (std::int64_t{1} << (k - 1 - j));
        h(s, t) += -4.0;
      }
    }
  }
  return min_eigenvalue_dense(h);
}

namespace {

std::mutex g_cache_mu;
std::map<std::vector<int>, double> g_cache;

double cached_component(int k, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> key{k};
  for (const auto& [a, b] : pairs) {
    key.push_back(a);
    key.push_back(b);
  }
  {
    std::lock_guard<std::mutex> lk(g_cache_mu);
    if (auto it = g_cache.find(key); it != g_cache.end()) return it->second;
  }
  const double e = epr_component_energy(k, pairs);
  std::lock_guard<std::mutex> lk(g_cache_mu);
  if (g_cache.size() > 200000) g_cache.clear();
  g_cache.emplace(std::move(key), e);
  return e;
}

}  // namespace

EprEnergy epr_min_energy(const EprDemandGraph& g, int max_exact_slots) {
  EprEnergy out;
  const auto comps = g.components();
  out.components = static_cast<int>(comps.size());
  std::vector<int> local(static_cast<std::size_t>(2 * g.num_sites), -1);
  for (const auto& comp : comps) {
    // Relabel slots in increasing global order for a stable cache key.
    std::vector<int> slots;
    for (int d : comp) {
      slots.push_back(g.demands[static_cast<std::size_t>(d)].first);
      slots.push_back(g.demands[static_cast<std::size_t>(d)].second);
    }
    std::sort(slots.begin(), slots.end());
    slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
    for (std::size_t i = 0; i < slots.size(); ++i) local[static_cast<std::size_t>(slots[i])] = static_cast<int>(i);
    std::vector<std::pair<int, int>> pairs;
    for (int d : comp) {
      const auto& [a, b] = g.demands[static_cast<std::size_t>(d)];
      pairs.emplace_back(local[static_cast<std::size_t>(a)], local[static_cast<std::size_t>(b)]);
    }
    std::sort(pairs.begin(), pairs.end());
    const int k = static_cast<int>(slots.size());
    out.largest_component_slots = std::max(out.largest_component_slots, k);
    if (k == 2 && pairs.size() == 1) continue;  // a lone bond is satisfied by |Phi+>
    if (k <= max_exact_slots) {
      out.value += cached_component(k, pairs);
    } else {
      out.value += epr_component_bound(k, pairs);
      out.bound_only = true;
    }
  }
  return out;
}

}  // namespace rih
