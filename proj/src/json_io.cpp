#include "rih/json_io.hpp"

#include <stdexcept>

namespace rih {

Json to_json(const LatticeSpec& s) {
  return Json{{"r", s.r}, {"n", s.n}, {"boundary", to_string(s.boundary)}};
}

LatticeSpec lattice_from_json(const Json& j) {
  return LatticeSpec(j.at("r").get<int>(), j.at("n").get<std::int64_t>(),
                     boundary_from_string(j.value("boundary", std::string("periodic"))));
}

std::string tile_name(const Tile& t) {
  static const char letters[] = {'r', 'y', 'b'};
  return std::string(1, letters[static_cast<int>(t.color)]) + std::to_string(t.number);
}

Tile tile_from_name(const std::string& s) {
  if (s.size() != 2) throw std::invalid_argument("bad tile name: " + s);
  Tile t;
  switch (s[0]) {
    case 'r': t.color = Color::red; break;
    case 'y': t.color = Color::yellow; break;
    case 'b': t.color = Color::blue; break;
    default: throw std::invalid_argument("bad tile colour: " + s);
  }
  if (s[1] < '0' || s[1] > '2') throw std::invalid_argument("bad tile number: " + s);
  t.number = s[1] - '0';
  return t;
}

static Json copy_json(const std::vector<Tile>& c) {
  Json a = Json::array();
  for (const auto& t : c) a.push_back(Json::array({static_cast<int>(t.color), t.number}));
  return a;
}

static std::vector<Tile> copy_from_json(const Json& a) {
  std::vector<Tile> c;
  for (const auto& p : a) {
    const int color = p.at(0).get<int>(), number = p.at(1).get<int>();
    if (color < 0 || color > 2 || number < 0 || number > 2) throw std::invalid_argument("tile out of range");
    c.push_back(Tile{static_cast<Color>(color), number});
  }
  return c;
}

Json to_json(const Tiling& t) {
  return Json{{"spec", to_json(t.spec)}, {"copies", Json::array({copy_json(t.copy1), copy_json(t.copy2)})}};
}

Tiling tiling_from_json(const Json& j) {
  const auto& copies = j.at("copies");
  if (copies.size() != 2) throw std::invalid_argument("a tiling has exactly two copies");
  Tiling t(lattice_from_json(j.at("spec")), copy_from_json(copies.at(0)), copy_from_json(copies.at(1)));
  t.validate();
  return t;
}

Json to_json(const ClassificationFlags& f) {
  Json j{{"looped", f.looped},
         {"has_turn", f.has_turn},
         {"uniformly_directed", f.uniformly_directed},
         {"numbered_consistently", f.numbered_consistently}};
  j["direction"] = f.uniformly_directed ? Json(f.direction) : Json(nullptr);
  return j;
}

Json to_json(const ClassicalEnergy& e) {
  return Json{{"tile1", e.tile1}, {"tile2", e.tile2}, {"loop1", e.loop1},
              {"loop2", e.loop2}, {"copy", e.copy},   {"total", e.total()}};
}

Json to_json(const SectorEnergy& e) {
  return Json{{"id", e.id},
              {"classical", e.classical},
              {"epr", e.epr},
              {"embedded2d", e.embedded2d},
              {"total", e.total},
              {"method", to_string(e.method)},
              {"parts", to_json(e.parts)},
              {"epr_bound_only", e.epr1.bound_only || e.epr2.bound_only},
              {"embedded_method", e.embedded.method}};
}

Json to_json(const EnergyReport& r, bool with_records) {
  Json j{{"schema", "rih.energy_report/1"},
         {"spec", to_json(r.spec)},
         {"plug", r.plug_id},
         {"n0", r.n0},
         {"lower_bound", r.lower_bound},
         {"upper_bound", r.upper_bound},
         {"complete", r.complete},
         {"certified", r.certified},
         {"single_copy_min", r.single_copy_min},
         {"records_truncated", r.records_truncated}};
  if (r.threshold)
    j["threshold"] = *r.threshold;
  else
    j["global_min"] = r.global_min;
  if (r.argmin) j["argmin"] = to_json(*r.argmin);
  j["num_records"] = r.records.size();
  if (with_records) {
    Json recs = Json::array();
    for (const auto& rec : r.records) {
      const Tiling t = rec.tiling(r.spec);
      recs.push_back(Json{{"total", rec.total},
                          {"e1", rec.e1},
                          {"e2", rec.e2},
                          {"coupling", rec.coupling},
                          {"embedded2d", rec.embedded2d},
                          {"exact", rec.exact},
                          {"copies", Json::array({copy_json(t.copy1), copy_json(t.copy2)})}});
    }
    j["records"] = std::move(recs);
  }
  const auto& s = r.stats;
  j["stats"] = Json{{"nodes", s.nodes},
                    {"pruned", s.pruned},
                    {"leaves", s.leaves},
                    {"single_copy_candidates", s.single_copy_candidates},
                    {"pairs_examined", s.pairs_examined},
                    {"sectors_evaluated", s.sectors_evaluated},
                    {"seconds", s.seconds}};
  return j;
}

Json to_json(const TileRuleSet& rs) {
  Json h = Json::array(), v = Json::array();
  for (auto [a, b] : rs.forbidden_h) h.push_back({rs.alphabet[a], rs.alphabet[b]});
  for (auto [a, b] : rs.forbidden_v) v.push_back({rs.alphabet[a], rs.alphabet[b]});
  return Json{{"alphabet", rs.alphabet}, {"forbidden_h", h}, {"forbidden_v", v}, {"boundary", to_string(rs.boundary)}};
}

TileRuleSet ruleset_from_json(const Json& j) {
  TileRuleSet rs;
  rs.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  for (const auto& p : j.value("forbidden_h", Json::array()))
    rs.forbidden_h.emplace(rs.index(p.at(0).get<std::string>()), rs.index(p.at(1).get<std::string>()));
  for (const auto& p : j.value("forbidden_v", Json::array()))
    rs.forbidden_v.emplace(rs.index(p.at(0).get<std::string>()), rs.index(p.at(1).get<std::string>()));
  rs.boundary = boundary_from_string(j.value("boundary", std::string("periodic")));
  rs.validate();
  return rs;
}

// Rows are listed top row first, the way a grid is read on paper.
Json to_json(const GridTiling& g, const TileRuleSet& rs) {
  Json rows = Json::array();
  for (int y = g.n - 1; y >= 0; --y) {
    Json row = Json::array();
    for (int x = 0; x < g.n; ++x) row.push_back(rs.alphabet[g.at(x, y)]);
    rows.push_back(row);
  }
  return rows;
}

GridTiling grid_from_json(const Json& j, const TileRuleSet& rs) {
  GridTiling g;
  g.n = static_cast<int>(j.size());
  g.cells.assign(static_cast<std::size_t>(g.n) * g.n, 0);
  for (int i = 0; i < g.n; ++i) {
    const auto& row = j.at(i);
    if (static_cast<int>(row.size()) != g.n) throw std::invalid_argument("grid must be square");
    const int y = g.n - 1 - i;
    for (int x = 0; x < g.n; ++x) g.cells[static_cast<std::size_t>(y * g.n + x)] = rs.index(row.at(x).get<std::string>());
  }
  return g;
}

Json to_json(const InstanceEncoding& e) {
  return Json{{"x", e.x},
              {"p", e.p.str()},
              {"n", e.n.str()},
              {"p_bits", to_binary(e.p)},
              {"trials", e.trials}};
}

}  // namespace rih
