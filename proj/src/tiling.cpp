#include "rih/tiling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rih {

std::string to_string(Color c) {
  switch (c) {
    case Color::red: return "red";
    case Color::yellow: return "yellow";
    case Color::blue: return "blue";
  }
  return "?";
}

Color color_from_string(const std::string& s) {
  if (s == "red") return Color::red;
  if (s == "yellow") return Color::yellow;
  if (s == "blue") return Color::blue;
  throw std::invalid_argument("unknown colour: " + s);
}

Tile Tile::from_code(int code) {
  if (code < 0 || code >= 9) throw std::invalid_argument("tile code out of range");
  return Tile{static_cast<Color>(code / 3), code % 3};
}

Tiling::Tiling(LatticeSpec s, std::vector<Tile> c1, std::vector<Tile> c2)
    : spec(s), copy1(std::move(c1)), copy2(std::move(c2)) {
  validate();
}

const std::vector<Tile>& Tiling::copy(int c) const {
  if (c == 1) return copy1;
  if (c == 2) return copy2;
  throw std::invalid_argument("copy index must be 1 or 2");
}

std::vector<Tile>& Tiling::copy(int c) {
  if (c == 1) return copy1;
  if (c == 2) return copy2;
  throw std::invalid_argument("copy index must be 1 or 2");
}

std::vector<std::uint8_t> Tiling::codes(int c) const {
  const auto& tiles = copy(c);
  std::vector<std::uint8_t> out(tiles.size());
  for (std::size_t i = 0; i < tiles.size(); ++i) out[i] = static_cast<std::uint8_t>(tiles[i].code());
  return out;
}

void Tiling::validate() const {
  const auto n = static_cast<std::size_t>(spec.num_sites());
  if (copy1.size() != n || copy2.size() != n) throw std::invalid_argument("tiling is not a total assignment");
  for (const auto* tiles : {&copy1, &copy2})
    for (const Tile& t : *tiles)
      if (t.number < 0 || t.number > 2 || static_cast<int>(t.color) > 2)
        throw std::invalid_argument("invalid tile");
}

std::vector<RuleViolation> rule_violations(const Tiling& t, int copy) {
  const LatticeGraph g(t.spec);
  const auto codes = t.codes(copy);
  std::vector<RuleViolation> out;
  for (const auto& e : g.edges()) {
    const int rule = tile_rule(codes[static_cast<std::size_t>(e.a)], codes[static_cast<std::size_t>(e.b)]);
    if (rule) out.push_back({{site_at(e.a, t.spec), site_at(e.b, t.spec)}, rule});
  }
  return out;
}

std::vector<int> same_color_degrees(const LatticeGraph& g, const std::vector<std::uint8_t>& codes) {
  std::vector<int> deg(static_cast<std::size_t>(g.num_sites()), 0);
  for (const auto& e : g.edges()) {
    if (codes[static_cast<std::size_t>(e.a)] / 3 == codes[static_cast<std::size_t>(e.b)] / 3) {
      ++deg[static_cast<std::size_t>(e.a)];
      ++deg[static_cast<std::size_t>(e.b)];
    }
  }
  return deg;
}

int same_color_degree(const Tiling& t, int copy, const Site& u) {
  const LatticeGraph g(t.spec);
  const auto codes = t.codes(copy);
  const int ui = static_cast<int>(site_index(u, t.spec));
  int k = 0;
  for (int v : g.neighbors(ui))
    if (codes[static_cast<std::size_t>(v)] / 3 == codes[static_cast<std::size_t>(ui)] / 3) ++k;
  return k;
}

namespace {

int coord_diff(const LatticeGraph& g, int a, int b) {
  const auto& ca = g.coords(a);
  const auto& cb = g.coords(b);
  int c = 0;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (ca[i] != cb[i]) ++c;
  return c;
}

}  // namespace

ClassificationFlags classify_codes(const LatticeGraph& g, const std::vector<std::uint8_t>& codes) {
  ClassificationFlags f;
  const auto deg = same_color_degrees(g, codes);
  f.looped = std::all_of(deg.begin(), deg.end(), [](int k) { return k == 2; });

  for (int v = 0; v < g.num_sites() && !f.has_turn; ++v) {
    const int cv = codes[static_cast<std::size_t>(v)] / 3;
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size() && !f.has_turn; ++i) {
      if (codes[static_cast<std::size_t>(nb[i])] / 3 != cv) continue;
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (codes[static_cast<std::size_t>(nb[j])] / 3 != cv) continue;
        if (coord_diff(g, nb[i], nb[j]) == 2) {
          f.has_turn = true;
          break;
        }
      }
    }
  }

  if (f.looped && !f.has_turn) {
    int dir = -1;
    bool single = true;
    for (const auto& e : g.edges()) {
      if (codes[static_cast<std::size_t>(e.a)] / 3 != codes[static_cast<std::size_t>(e.b)] / 3) continue;
      if (dir < 0) dir = e.dim;
      else if (dir != e.dim) {
        single = false;
        break;
      }
    }
    if (single && dir >= 0) {
      f.uniformly_directed = true;
      f.direction = dir;
    }
  }

  if (f.uniformly_directed) {
    const int d = f.direction;
    std::vector<int> number_at(static_cast<std::size_t>(g.spec().n), -1);
    bool ok = true;
    for (int u = 0; u < g.num_sites() && ok; ++u) {
      const int x = g.coords(u)[static_cast<std::size_t>(d)];
      const int m = codes[static_cast<std::size_t>(u)] % 3;
      int& slot = number_at[static_cast<std::size_t>(x)];
      if (slot < 0) slot = m;
      else if (slot != m) ok = false;
    }
    f.numbered_consistently = ok;
  }
  return f;
}

ClassificationFlags classify(const Tiling& t, int copy) {
  const LatticeGraph g(t.spec);
  return classify_codes(g, t.codes(copy));
}

std::vector<std::uint8_t> striped_copy(const LatticeGraph& g, int dir) {
  const auto& spec = g.spec();
  if (dir < 0 || dir >= spec.r) throw std::invalid_argument("stripe direction out of range");
  if (spec.boundary == Boundary::periodic && spec.n % 3 != 0)
    throw std::invalid_argument("periodic striped witness needs n divisible by 3");
  std::vector<std::uint8_t> codes(static_cast<std::size_t>(g.num_sites()));
  for (int u = 0; u < g.num_sites(); ++u) {
    const auto& c = g.coords(u);
    int s = 0;
    for (int i = 0; i < spec.r; ++i)
      if (i != dir) s += c[static_cast<std::size_t>(i)];
    codes[static_cast<std::size_t>(u)] = static_cast<std::uint8_t>((s % 3) * 3 + c[static_cast<std::size_t>(dir)] % 3);
  }
  return codes;
}

Tiling striped_witness(const LatticeSpec& spec, int copy1_dir, int copy2_dir) {
  if (copy1_dir == copy2_dir) throw std::invalid_argument("witness copies need different directions");
  const LatticeGraph g(spec);
  const auto c1 = striped_copy(g, copy1_dir);
  const auto c2 = striped_copy(g, copy2_dir);
  Tiling t;
  t.spec = spec;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    t.copy1.push_back(Tile::from_code(c1[i]));
    t.copy2.push_back(Tile::from_code(c2[i]));
  }
  return t;
}

std::int64_t single_copy_classical(const LatticeGraph& g, const std::vector<std::uint8_t>& codes) {
  std::int64_t e = 0;
  for (const auto& ed : g.edges())
    e += edge_classical_cost(codes[static_cast<std::size_t>(ed.a)], codes[static_cast<std::size_t>(ed.b)]);
  return e;
}

std::int64_t copy_coupling(const LatticeGraph& g, const std::vector<std::uint8_t>& c1,
                           const std::vector<std::uint8_t>& c2) {
  std::int64_t e = 0;
  for (const auto& ed : g.edges()) {
    const auto a = static_cast<std::size_t>(ed.a), b = static_cast<std::size_t>(ed.b);
    if (c1[a] / 3 == c1[b] / 3 && c2[a] / 3 == c2[b] / 3) ++e;
  }
  return e;
}

ClassicalEnergy classical_energy(const Tiling& t) {
  const LatticeGraph g(t.spec);
  const auto c1 = t.codes(1);
  const auto c2 = t.codes(2);
  ClassicalEnergy out;
  for (const auto& ed : g.edges()) {
    const auto a = static_cast<std::size_t>(ed.a), b = static_cast<std::size_t>(ed.b);
    if (tile_rule(c1[a], c1[b])) out.tile1 += 8;
    if (tile_rule(c2[a], c2[b])) out.tile2 += 8;
    if (c1[a] / 3 != c1[b] / 3) out.loop1 += 2;
    if (c2[a] / 3 != c2[b] / 3) out.loop2 += 2;
  }
  out.copy = copy_coupling(g, c1, c2);
  return out;
}

std::int64_t h1lb_bound_codes(const LatticeGraph& g, const std::vector<std::uint8_t>& codes) {
  const auto deg = same_color_degrees(g, codes);
  std::int64_t b = 2 * static_cast<std::int64_t>(g.edges().size());
  for (int k : deg) b += -k + 4 * (k / 3);
  return b;
}

std::int64_t h1lb_bound(const Tiling& t, int copy) {
  const LatticeGraph g(t.spec);
  return h1lb_bound_codes(g, t.codes(copy));
}

std::vector<ColorLoop> color_loops(const LatticeGraph& g, const std::vector<std::uint8_t>& codes) {
  const int N = g.num_sites();
  std::vector<int> comp(static_cast<std::size_t>(N), -1);
  std::vector<ColorLoop> out;
  for (int s = 0; s < N; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    ColorLoop loop;
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = static_cast<int>(out.size());
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      loop.sites.push_back(u);
      for (int v : g.neighbors(u)) {
        if (codes[static_cast<std::size_t>(v)] / 3 != codes[static_cast<std::size_t>(u)] / 3) continue;
        if (comp[static_cast<std::size_t>(v)] >= 0) continue;
        comp[static_cast<std::size_t>(v)] = static_cast<int>(out.size());
        stack.push_back(v);
      }
    }
    std::sort(loop.sites.begin(), loop.sites.end());
    // Straight loop: n sites that agree on every coordinate except one axis.
    if (static_cast<std::int64_t>(loop.sites.size()) == g.spec().n) {
      for (int a = 0; a < g.spec().r && loop.axis < 0; ++a) {
        bool ok = true;
        const auto& c0 = g.coords(loop.sites.front());
        for (int u : loop.sites) {
          const auto& cu = g.coords(u);
          for (int i = 0; i < g.spec().r; ++i)
            if (i != a && cu[static_cast<std::size_t>(i)] != c0[static_cast<std::size_t>(i)]) ok = false;
        }
        if (ok) loop.axis = a;
      }
    }
    out.push_back(std::move(loop));
  }
  return out;
}

Tiling permute_tiling(const Tiling& t, const std::vector<int>& perm) {
  Tiling out = t;
  const std::int64_t N = t.spec.num_sites();
  for (std::int64_t i = 0; i < N; ++i) {
    const Site u = site_at(i, t.spec);
    const auto j = static_cast<std::size_t>(site_index(permute_site(u, perm), t.spec));
    out.copy1[j] = t.copy1[static_cast<std::size_t>(i)];
    out.copy2[j] = t.copy2[static_cast<std::size_t>(i)];
  }
  return out;
}

Tiling translate_tiling(const Tiling& t, const std::vector<int>& shift) {
  if (t.spec.boundary != Boundary::periodic) throw std::invalid_argument("translation needs a periodic lattice");
  if (static_cast<int>(shift.size()) != t.spec.r) throw std::invalid_argument("shift dimension mismatch");
  Tiling out = t;
  const std::int64_t N = t.spec.num_sites();
  for (std::int64_t i = 0; i < N; ++i) {
    Site u = site_at(i, t.spec);
    for (int k = 0; k < t.spec.r; ++k) {
      auto& c = u.coords[static_cast<std::size_t>(k)];
      c = static_cast<int>(((c + shift[static_cast<std::size_t>(k)]) % t.spec.n + t.spec.n) % t.spec.n);
    }
    const auto j = static_cast<std::size_t>(site_index(u, t.spec));
    out.copy1[j] = t.copy1[static_cast<std::size_t>(i)];
    out.copy2[j] = t.copy2[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace rih
