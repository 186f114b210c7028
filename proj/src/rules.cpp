#include "rih/rules.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "rih/parallel.hpp"

namespace rih {

int TileRuleSet::index(const std::string& name) const {
  const auto it = std::find(alphabet.begin(), alphabet.end(), name);
  if (it == alphabet.end()) throw std::invalid_argument("tile not in alphabet: " + name);
  return static_cast<int>(it - alphabet.begin());
}

void TileRuleSet::validate() const {
  if (alphabet.empty()) throw std::invalid_argument("empty alphabet");
  std::set<std::string> names(alphabet.begin(), alphabet.end());
  if (names.size() != alphabet.size()) throw std::invalid_argument("duplicate tile names");
  for (const auto* s : {&forbidden_h, &forbidden_v})
    for (const auto& [a, b] : *s)
      if (a < 0 || b < 0 || a >= size() || b >= size()) throw std::invalid_argument("rule references unknown tile");
}

std::vector<GridViolation> check_tiling(const TileRuleSet& rs, const GridTiling& g) {
  rs.validate();
  if (g.n < 1 || static_cast<int>(g.cells.size()) != g.n * g.n) throw std::invalid_argument("grid is not n x n");
  for (int c : g.cells)
    if (c < 0 || c >= rs.size()) throw std::invalid_argument("grid uses a tile outside the alphabet");
  const bool periodic = rs.boundary == Boundary::periodic;
  std::vector<GridViolation> out;
  for (int y = 0; y < g.n; ++y) {
    for (int x = 0; x < g.n; ++x) {
      if (x + 1 < g.n || periodic) {
        const int a = g.at(x, y), b = g.at((x + 1) % g.n, y);
        if (rs.forbidden_h.count({a, b})) out.push_back({x, y, true, a, b});
      }
      if (y + 1 < g.n || periodic) {
        const int a = g.at(x, y), b = g.at(x, (y + 1) % g.n);
        if (rs.forbidden_v.count({a, b})) out.push_back({x, y, false, a, b});
      }
    }
  }
  return out;
}

Enumeration enumerate_valid(const TileRuleSet& rs, int n, std::size_t limit, const std::vector<int>& require_present) {
  rs.validate();
  if (n < 1) throw std::invalid_argument("grid size must be >= 1");
  if (rs.size() > 64) throw std::invalid_argument("alphabet too large for exhaustive enumeration");
  const int A = rs.size();
  const bool periodic = rs.boundary == Boundary::periodic;
  std::vector<char> ok_h(static_cast<std::size_t>(A * A), 1), ok_v(static_cast<std::size_t>(A * A), 1);
  for (const auto& [a, b] : rs.forbidden_h) ok_h[static_cast<std::size_t>(a * A + b)] = 0;
  for (const auto& [a, b] : rs.forbidden_v) ok_v[static_cast<std::size_t>(a * A + b)] = 0;

  // Rows consistent with the horizontal rules, in lexicographic order.
  std::vector<std::vector<int>> rows;
  std::vector<int> row(static_cast<std::size_t>(n));
  std::function<void(int)> build = [&](int x) {
    if (x == n) {
      if (periodic && !ok_h[static_cast<std::size_t>(row[static_cast<std::size_t>(n - 1)] * A + row[0])]) return;
      rows.push_back(row);
      return;
    }
    for (int t = 0; t < A; ++t) {
      if (x > 0 && !ok_h[static_cast<std::size_t>(row[static_cast<std::size_t>(x - 1)] * A + t)]) continue;
      row[static_cast<std::size_t>(x)] = t;
      build(x + 1);
    }
  };
  build(0);

  const std::size_t R = rows.size();
  // above[i]: rows that may sit directly on top of row i.
  std::vector<std::vector<int>> above(R);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < R; ++j) {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x)
        ok = ok_v[static_cast<std::size_t>(rows[i][static_cast<std::size_t>(x)] * A + rows[j][static_cast<std::size_t>(x)])];
      if (ok) above[i].push_back(static_cast<int>(j));
    }
  auto can_stack = [&](int below, int top) {
    const auto& a = above[static_cast<std::size_t>(below)];
    return std::binary_search(a.begin(), a.end(), top);
  };

  struct Chunk {
    std::vector<GridTiling> tilings;
    std::int64_t count = 0;
  };
  std::vector<Chunk> chunks(R);
  parallel_ranges(static_cast<std::int64_t>(R), [&](std::int64_t b, std::int64_t e) {
    std::vector<int> stack(static_cast<std::size_t>(n));
    for (std::int64_t first = b; first < e; ++first) {
      Chunk& ch = chunks[static_cast<std::size_t>(first)];
      stack[0] = static_cast<int>(first);
      std::function<void(int)> rec = [&](int y) {
        if (y == n) {
          if (periodic && !can_stack(stack[static_cast<std::size_t>(n - 1)], stack[0])) return;
          GridTiling g;
          g.n = n;
          for (int r : stack) g.cells.insert(g.cells.end(), rows[static_cast<std::size_t>(r)].begin(), rows[static_cast<std::size_t>(r)].end());
          if (!require_present.empty()) {
            for (int t : require_present)
              if (std::find(g.cells.begin(), g.cells.end(), t) == g.cells.end()) return;
          }
          ++ch.count;
          if (ch.tilings.size() < limit) ch.tilings.push_back(std::move(g));
          return;
        }
        for (int nxt : above[static_cast<std::size_t>(stack[static_cast<std::size_t>(y - 1)])]) {
          stack[static_cast<std::size_t>(y)] = nxt;
          rec(y + 1);
        }
      };
      rec(1);
    }
  }, 1);

  Enumeration out;
  for (auto& ch : chunks) {
    out.count += ch.count;
    for (auto& g : ch.tilings) {
      if (out.tilings.size() < limit) out.tilings.push_back(std::move(g));
      else out.truncated = true;
    }
  }
  if (static_cast<std::int64_t>(out.tilings.size()) < out.count) out.truncated = true;
  return out;
}

// ---------------------------------------------------------------- 3x3 lift

std::string to_string(SubTile s) {
  static const char* names[] = {"SW", "S", "SE", "W", "C", "E", "NW", "N", "NE"};
  return names[static_cast<int>(s)];
}
int subtile_dx(SubTile s) { return static_cast<int>(s) % 3; }
int subtile_dy(SubTile s) { return static_cast<int>(s) / 3; }

namespace {
int pos_of(int dx, int dy) { return dy * 3 + dx; }
}  // namespace

TileRuleSet lift_3x3(const TileRuleSet& rs) {
  rs.validate();
  const int A = rs.size();
  TileRuleSet out;
  out.boundary = rs.boundary;
  for (int t = 0; t < A; ++t)
    for (int p = 0; p < 9; ++p) out.alphabet.push_back(rs.alphabet[static_cast<std::size_t>(t)] + "@" + to_string(static_cast<SubTile>(p)));
  const int L = A * 9;
  for (int a = 0; a < L; ++a) {
    for (int b = 0; b < L; ++b) {
      const int ta = a / 9, tb = b / 9;
      const int dxa = a % 9 % 3, dya = a % 9 / 3, dxb = b % 9 % 3, dyb = b % 9 / 3;
      // Horizontal: b directly right of a.
      bool h_ok = false;
      if (dya == dyb) {
        if (ta == tb && dxb == dxa + 1) h_ok = true;                                   // inside one block
        if (dxa == 2 && dxb == 0 && !rs.forbidden_h.count({ta, tb})) h_ok = true;      // across facing borders
      }
      if (!h_ok) out.forbidden_h.insert({a, b});
      // Vertical: b directly above a.
      bool v_ok = false;
      if (dxa == dxb) {
        if (ta == tb && dyb == dya + 1) v_ok = true;
        if (dya == 2 && dyb == 0 && !rs.forbidden_v.count({ta, tb})) v_ok = true;
      }
      if (!v_ok) out.forbidden_v.insert({a, b});
    }
  }
  return out;
}

std::optional<DecodedLift> decode_lifted(const GridTiling& lifted, int original_alphabet) {
  const int m = lifted.n;
  if (m % 3 != 0) return std::nullopt;
  const int c0 = lifted.at(0, 0);
  if (c0 < 0 || c0 >= original_alphabet * 9) return std::nullopt;
  DecodedLift d;
  d.ox = (3 - (c0 % 9) % 3) % 3;
  d.oy = (3 - (c0 % 9) / 3) % 3;
  const int n = m / 3;
  d.original.n = n;
  d.original.cells.assign(static_cast<std::size_t>(n * n), -1);
  for (int y = 0; y < m; ++y) {
    for (int x = 0; x < m; ++x) {
      const int c = lifted.at(x, y);
      const int rx = ((x - d.ox) % 3 + 3) % 3, ry = ((y - d.oy) % 3 + 3) % 3;
      if (c % 9 != pos_of(rx, ry)) return std::nullopt;
      const int bx = ((x - d.ox) % m + m) % m / 3, by = ((y - d.oy) % m + m) % m / 3;
      int& slot = d.original.cells[static_cast<std::size_t>(by * n + bx)];
      if (slot < 0) slot = c / 9;
      else if (slot != c / 9) return std::nullopt;
    }
  }
  return d;
}

GridTiling encode_lifted(const GridTiling& original, int ox, int oy) {
  const int n = original.n, m = 3 * n;
  GridTiling g;
  g.n = m;
  g.cells.assign(static_cast<std::size_t>(m * m), 0);
  for (int y = 0; y < m; ++y)
    for (int x = 0; x < m; ++x) {
      const int sx = ((x - ox) % m + m) % m, sy = ((y - oy) % m + m) % m;
      const int t = original.at(sx / 3, sy / 3);
      g.cells[static_cast<std::size_t>(y * m + x)] = t * 9 + pos_of(sx % 3, sy % 3);
    }
  return g;
}

TileRuleSet reflect_horizontal(const TileRuleSet& rs, const std::vector<int>& relabel) {
  std::vector<int> phi = relabel;
  if (phi.empty()) {
    phi.resize(static_cast<std::size_t>(rs.size()));
    for (int i = 0; i < rs.size(); ++i) phi[static_cast<std::size_t>(i)] = i;
  }
  TileRuleSet out;
  out.alphabet = rs.alphabet;
  out.boundary = rs.boundary;
  for (const auto& [a, b] : rs.forbidden_h) out.forbidden_h.insert({phi[static_cast<std::size_t>(b)], phi[static_cast<std::size_t>(a)]});
  for (const auto& [a, b] : rs.forbidden_v) out.forbidden_v.insert({phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)]});
  return out;
}

std::vector<int> lifted_mirror(int original_alphabet) {
  std::vector<int> phi;
  for (int t = 0; t < original_alphabet; ++t)
    for (int p = 0; p < 9; ++p) phi.push_back(t * 9 + pos_of(2 - p % 3, p / 3));
  return phi;
}

TileRuleSet open_bc_frame_ruleset() {
  TileRuleSet rs;
  rs.alphabet = {"left-bc", "bottom-bc", "right-bc", "blank"};
  rs.boundary = Boundary::open;
  enum { L = 0, B = 1, R = 2, X = 3 };
  for (int t = 0; t < 4; ++t) {
    rs.forbidden_h.insert({t, L});  // nothing left of left-bc
    rs.forbidden_v.insert({t, L});  // nothing below left-bc
    rs.forbidden_v.insert({t, B});  // nothing below bottom-bc
    rs.forbidden_h.insert({R, t});  // nothing right of right-bc
    rs.forbidden_v.insert({t, R});  // nothing below right-bc
    if (t != B) {
      rs.forbidden_h.insert({L, t});  // only bottom-bc right of left-bc
      rs.forbidden_h.insert({t, R});  // only bottom-bc left of right-bc
    }
    if (t != X) {
      rs.forbidden_v.insert({L, t});  // only blank above the border tiles
      rs.forbidden_v.insert({B, t});
      rs.forbidden_v.insert({R, t});
    }
  }
  rs.forbidden_h.insert({X, B});  // blank never beside bottom-bc
  rs.forbidden_h.insert({B, X});
  return rs;
}

}  // namespace rih
