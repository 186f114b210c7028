// rih: command-line front end. JSON on stdout, diagnostics on stderr.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rih/epr.hpp"
#include "rih/instance.hpp"
#include "rih/json_io.hpp"
#include "rih/parallel.hpp"
#include "rih/rules.hpp"
#include "rih/search.hpp"
#include "rih/verify.hpp"

using namespace rih;

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json copy_report(const Tiling& t, int c) {
  const auto epr = epr_min_energy(epr_demand_graph(t, c));
  Json viol = Json::array();
  for (const auto& v : rule_violations(t, c))
    viol.push_back(Json{{"a", v.edge.a.coords}, {"b", v.edge.b.coords}, {"rule", v.rule}});
  return Json{{"flags", to_json(classify(t, c))},
              {"violations", viol},
              {"epr_conflicts", epr_demand_graph(t, c).conflict_count()},
              {"epr_energy", epr.value},
              {"h1lb", h1lb_bound(t, c)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation-invariant lattice Hamiltonian toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: RIH_THREADS or hardware)");

  std::string x;
  std::uint64_t seed = 1;
  auto* encode = app.add_subcommand("encode", "find n = 3p with the top bits of p spelling x");
  encode->add_option("--x", x, "bit string with leading 1")->required();
  encode->add_option("--seed", seed);

  int r = 2;
  std::string plug_id = "zero";
  std::string mtx_path;
  auto* reduce = app.add_subcommand("reduce", "lattice spec and two-body term for an input");
  reduce->add_option("--x", x)->required();
  reduce->add_option("--r", r)->required();
  reduce->add_option("--plug", plug_id)->check(CLI::IsMember({"zero", "ff", "afm", "directed"}));
  reduce->add_option("--seed", seed);
  reduce->add_option("--export", mtx_path, "write the term as Matrix Market");

  std::string profile = "fast";
  std::vector<int> only;
  bool mutate = false;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--profile", profile)->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--only", only, "criterion ids");
  verify->add_flag("--mutate", mutate, "corrupt the EPR coefficient of the assembled term (negative control)");

  std::int64_t n = 3;
  std::string boundary = "periodic";
  std::int64_t budget = std::int64_t{1} << 40;
  std::int64_t cap = std::int64_t{1} << 22;
  double tol = 1e-10;
  std::optional<double> threshold;
  bool no_records = false;
  auto* solve = app.add_subcommand("solve", "certified ground energy by sector search");
  solve->add_option("--r", r)->required();
  solve->add_option("--n", n)->required();
  solve->add_option("--plug", plug_id)->check(CLI::IsMember({"zero", "ff", "afm", "directed"}));
  solve->add_option("--boundary", boundary)->check(CLI::IsMember({"periodic", "open"}));
  solve->add_option("--budget", budget, "search node budget");
  solve->add_option("--cap", cap, "largest embedded-2D space for Lanczos");
  solve->add_option("--tol", tol, "eigensolver tolerance");
  solve->add_option("--threshold", threshold, "list every sector below this energy instead");
  solve->add_flag("--no-records", no_records);

  int dir1 = 0, dir2 = 1;
  auto* witness = app.add_subcommand("witness", "striped completeness tiling and its energies");
  witness->add_option("--r", r)->required();
  witness->add_option("--n", n)->required();
  witness->add_option("--boundary", boundary)->check(CLI::IsMember({"periodic", "open"}));
  witness->add_option("--dir1", dir1);
  witness->add_option("--dir2", dir2);
  witness->add_option("--plug", plug_id)->check(CLI::IsMember({"zero", "ff", "afm", "directed"}));

  std::string tiling_path;
  auto* classify_cmd = app.add_subcommand("classify", "flags and energies of a tiling");
  classify_cmd->add_option("tiling", tiling_path)->required()->check(CLI::ExistingFile);
  classify_cmd->add_option("--plug", plug_id)->check(CLI::IsMember({"zero", "ff", "afm", "directed"}));

  auto* tiles = app.add_subcommand("tiles", "generic tile rule engine");
  tiles->require_subcommand(1);
  std::string rules_path, grid_path;
  int size = 3;
  std::size_t limit = 1000;
  std::vector<std::string> require;
  auto* t_enum = tiles->add_subcommand("enumerate", "all valid n x n tilings");
  t_enum->add_option("rules", rules_path)->required()->check(CLI::ExistingFile);
  t_enum->add_option("--n", size)->required();
  t_enum->add_option("--limit", limit);
  t_enum->add_option("--require", require, "tiles that must appear");
  auto* t_check = tiles->add_subcommand("check", "list rule violations of a grid");
  t_check->add_option("rules", rules_path)->required()->check(CLI::ExistingFile);
  t_check->add_option("grid", grid_path)->required()->check(CLI::ExistingFile);
  auto* t_lift = tiles->add_subcommand("lift", "3x3 block lift of a rule set");
  t_lift->add_option("rules", rules_path)->required()->check(CLI::ExistingFile);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  for (auto* sub : tiles->get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_thread_count(threads);

  try {
    if (*encode) {
      emit(to_json(f_search(x, seed)));
    } else if (*reduce) {
      const TiPlug plug = toy_plug(plug_id);
      const Reduction red = reduction(x, r, plug, seed);
      Json j{{"encoding", to_json(red.encoding)},
             {"spec", {{"r", r}, {"n", red.encoding.n.str()}, {"boundary", "periodic"}}},
             {"plug", plug.id},
             {"term_hash", hex64(term_hash(red.term->matrix))},
             {"term_rows", red.term->matrix.rows},
             {"term_nnz", red.term->matrix.val.size()}};
      if (!mtx_path.empty()) {
        std::ofstream os(mtx_path);
        write_matrix_market(os, red.term->matrix, term_header(*red.term));
        j["exported"] = mtx_path;
      }
      emit(j);
    } else if (*verify) {
      VerifyOptions opt;
      opt.full = profile == "full";
      opt.only = only;
      if (mutate) opt.coeffs.epr = 15.0;
      Json out = Json::array();
      bool all = true;
      for (int id = 1; id <= kNumCriteria; ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const CriterionResult res = run_criterion(id, opt);
        std::cerr << (res.passed ? "PASS " : "FAIL ") << res.id << " " << res.name << ": " << res.summary << "\n";
        all &= res.passed;
        out.push_back(to_json(res));
      }
      emit(Json{{"profile", profile}, {"passed", all}, {"criteria", out}});
      return all ? 0 : 1;
    } else if (*solve) {
      SearchOptions opt;
      opt.node_budget = budget;
      opt.solver.cap = cap;
      opt.solver.tol = tol;
      opt.threshold = threshold;
      const EnergyReport rep = ground_energy_search(LatticeSpec(r, n, boundary_from_string(boundary)), toy_plug(plug_id), opt);
      emit(to_json(rep, !no_records));
    } else if (*witness) {
      const Tiling w = striped_witness(LatticeSpec(r, n, boundary_from_string(boundary)), dir1, dir2);
      emit(Json{{"tiling", to_json(w)},
                {"classical", to_json(classical_energy(w))},
                {"sector", to_json(tile_sector_energy(w, toy_plug(plug_id)))},
                {"copy1", copy_report(w, 1)},
                {"copy2", copy_report(w, 2)}});
    } else if (*classify_cmd) {
      // bare tiling, or a fixture file wrapping one
      const Json j = read_json(tiling_path);
      const Tiling t = tiling_from_json(j.contains("tiling") ? j.at("tiling") : j);
      emit(Json{{"copy1", copy_report(t, 1)},
                {"copy2", copy_report(t, 2)},
                {"classical", to_json(classical_energy(t))},
                {"sector", to_json(tile_sector_energy(t, toy_plug(plug_id)))}});
    } else if (*t_enum) {
      const TileRuleSet rs = ruleset_from_json(read_json(rules_path));
      std::vector<int> req;
      for (const auto& s : require) req.push_back(rs.index(s));
      const Enumeration e = enumerate_valid(rs, size, limit, req);
      Json list = Json::array();
      for (const auto& g : e.tilings) list.push_back(to_json(g, rs));
      emit(Json{{"n", size}, {"count", e.count}, {"truncated", e.truncated}, {"tilings", list}});
    } else if (*t_check) {
      const TileRuleSet rs = ruleset_from_json(read_json(rules_path));
      const GridTiling g = grid_from_json(read_json(grid_path), rs);
      Json viol = Json::array();
      for (const auto& v : check_tiling(rs, g))
        viol.push_back(Json{{"x", v.x}, {"y", v.y}, {"horizontal", v.horizontal},
                            {"pair", {rs.alphabet[v.first], rs.alphabet[v.second]}}});
      emit(Json{{"valid", viol.empty()}, {"violations", viol}});
    } else if (*t_lift) {
      emit(to_json(lift_3x3(ruleset_from_json(read_json(rules_path)))));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
