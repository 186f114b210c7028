#include "rih/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rih {

namespace {
constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

Tiling SectorRecord::tiling(const LatticeSpec& spec) const {
  Tiling t;
  t.spec = spec;
  for (auto c : c1) t.copy1.push_back(Tile::from_code(c));
  for (auto c : c2) t.copy2.push_back(Tile::from_code(c));
  return t;
}

std::vector<int> site_order(const LatticeGraph& g, const std::vector<int>& perm) {
  std::vector<int> order(static_cast<std::size_t>(g.num_sites()));
  std::iota(order.begin(), order.end(), 0);
  if (perm.empty()) return order;
  const auto& spec = g.spec();
  std::vector<std::int64_t> key(order.size());
  for (int u = 0; u < g.num_sites(); ++u)
    key[static_cast<std::size_t>(u)] = site_index(permute_site(Site(g.coords(u)), perm), spec);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)]; });
  return order;
}

SingleCopySearch::SingleCopySearch(const LatticeGraph& g, std::vector<int> order, bool fix_first)
    : g_(g), order_(std::move(order)), fix_first_(fix_first) {
  if (static_cast<int>(order_.size()) != g.num_sites()) throw std::invalid_argument("site order size mismatch");
}

double SingleCopySearch::star(int u, int code, const Codes& codes) const {
  double cost = 0.0;
  int k2 = 0, k1 = 0, free = 0;
  for (int v : g_.neighbors(u)) {
    const std::uint8_t cv = codes[static_cast<std::size_t>(v)];
    if (cv == kUnassigned) {
      ++free;
      continue;
    }
    cost += edge_classical_cost(code, cv);
    const int rel = number_relation(code, cv);
    if (rel == 1) ++k2;       // u.sigma2 paired with v.sigma1
    else if (rel == 2) ++k1;  // v.sigma2 paired with u.sigma1
  }
  // A free neighbour either joins one of u's slots at no classical cost or pays 2.
  const int absorbed = (k2 == 0) + (k1 == 0);
  return cost + 4.0 * std::max(0, k2 - 1) + 4.0 * std::max(0, k1 - 1) + 2.0 * std::max(0, free - absorbed);
}

double SingleCopySearch::star_min(int u, const Codes& codes) const {
  const std::uint8_t cu = codes[static_cast<std::size_t>(u)];
  if (cu != kUnassigned) return star(u, cu, codes);
  double best = kInf;
  for (int c = 0; c < 9; ++c) best = std::min(best, star(u, c, codes));
  return best;
}

double SingleCopySearch::lower_bound(const Codes& partial) const {
  double s = 0.0;
  for (int u = 0; u < g_.num_sites(); ++u) s += star_min(u, partial);
  return 0.5 * s;
}

bool SingleCopySearch::run(const std::function<bool(double, const Codes&, int)>& prune,
                           const std::function<void(const Codes&)>& leaf, std::int64_t node_budget,
                           SearchStats& stats) {
  const int N = g_.num_sites();
  Codes codes(static_cast<std::size_t>(N), kUnassigned);
  std::vector<double> stars(static_cast<std::size_t>(N));
  for (int u = 0; u < N; ++u) stars[static_cast<std::size_t>(u)] = star_min(u, codes);
  double star_sum = std::accumulate(stars.begin(), stars.end(), 0.0);
  bool budget_ok = true;

  // Iterative DFS; each frame keeps the next code to try and the stars it overwrote.
  struct Frame {
    int next = 0;
    int last = 9;
    std::vector<std::pair<int, double>> saved;
  };
  std::vector<Frame> stack(static_cast<std::size_t>(N) + 1);
  int depth = 0;
  stack[0].next = 0;
  stack[0].last = fix_first_ ? 1 : 9;
  while (depth >= 0) {
    Frame& f = stack[static_cast<std::size_t>(depth)];
    const int u = order_[static_cast<std::size_t>(depth)];
    // Undo the previous choice at this depth.
    if (!f.saved.empty()) {
      for (auto it = f.saved.rbegin(); it != f.saved.rend(); ++it) {
        star_sum += it->second - stars[static_cast<std::size_t>(it->first)];
        stars[static_cast<std::size_t>(it->first)] = it->second;
      }
      f.saved.clear();
      codes[static_cast<std::size_t>(u)] = kUnassigned;
    }
    if (f.next >= f.last) {
      --depth;
      continue;
    }
    const int code = f.next++;
    if (++stats.nodes > node_budget) {
      budget_ok = false;
      break;
    }
    codes[static_cast<std::size_t>(u)] = static_cast<std::uint8_t>(code);
    auto refresh = [&](int w) {
      f.saved.emplace_back(w, stars[static_cast<std::size_t>(w)]);
      const double nv = star_min(w, codes);
      star_sum += nv - stars[static_cast<std::size_t>(w)];
      stars[static_cast<std::size_t>(w)] = nv;
    };
    refresh(u);
    for (int w : g_.neighbors(u)) refresh(w);
    const double lb = 0.5 * star_sum;
    if (prune(lb, codes, depth + 1)) {
      ++stats.pruned;
      continue;
    }
    if (depth + 1 == N) {
      ++stats.leaves;
      leaf(codes);
      continue;
    }
    ++depth;
    Frame& child = stack[static_cast<std::size_t>(depth)];
    child.next = 0;
    child.last = 9;
    child.saved.clear();
  }
  return budget_ok;
}

namespace {

struct Candidate {
  Codes codes;
  double energy;
  bool exact;
};

/// Collects single-copy tilings with energy <= limit (or < limit when strict).
/// When tighten is set the limit follows the best energy seen (minimisation).
bool collect_single(SingleCopySearch& search, const LatticeGraph& g, double& limit, bool strict, bool tighten,
                    int max_slots, std::int64_t budget, SearchStats& stats, std::vector<Candidate>& out) {
  auto over = [&](double e) { return strict ? e >= limit - kEps : e > limit + kEps; };
  const bool ok = search.run([&](double lb, const Codes&, int) { return over(lb); },
                             [&](const Codes& codes) {
                               const auto e = single_copy_energy(g, codes, max_slots);
                               if (over(e.total)) return;
                               if (tighten && e.total < limit - kEps) {
                                 limit = e.total;
                                 out.erase(std::remove_if(out.begin(), out.end(),
                                                          [&](const Candidate& c) { return c.energy > limit + kEps; }),
                                           out.end());
                               }
                               out.push_back({codes, e.total, e.exact});
                             },
                             budget, stats);
  return ok;
}

}  // namespace

static bool witness_passes(const LatticeSpec& spec, const PairFilter& filter) {
  if (!(spec.r >= 2 && (spec.boundary == Boundary::open || spec.n % 3 == 0))) return false;
  const LatticeGraph g(spec);
  const Tiling w = striped_witness(spec, 0, 1);
  return filter(g, w.codes(1), w.codes(2));
}

// Minimising over a filtered set whose best member is unknown: the unfiltered incumbent
// is no valid cut, so widen a threshold until some sector passes.
static EnergyReport filtered_minimum(const LatticeSpec& spec, const TiPlug& plug, const SearchOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchOptions probe = opt;
  probe.threshold = 0.0;
  probe.filter = nullptr;
  probe.max_records = 0;
  const double floor = 2.0 * ground_energy_search(spec, plug, probe).single_copy_min;
  SearchStats total;
  for (double step = 4.0;; step *= 2.0) {
    SearchOptions o = opt;
    o.threshold = std::min(floor + step, opt.filter_ceiling);
    EnergyReport rep = ground_energy_search(spec, plug, o);
    total.nodes += rep.stats.nodes;
    total.pruned += rep.stats.pruned;
    total.leaves += rep.stats.leaves;
    total.single_copy_candidates = rep.stats.single_copy_candidates;
    total.pairs_examined += rep.stats.pairs_examined;
    total.sectors_evaluated += rep.stats.sectors_evaluated;
    const bool found = std::isfinite(rep.global_min);
    if (found || !rep.complete || total.nodes > opt.node_budget || *o.threshold >= opt.filter_ceiling) {
      const double best = rep.global_min;
      std::erase_if(rep.records, [&](const SectorRecord& r) { return r.total > best + kEps; });
      rep.threshold.reset();
      if (!found) rep.lower_bound = *o.threshold;
      rep.argmin.reset();
      if (!rep.records.empty()) rep.argmin = rep.records.front().tiling(spec);
      rep.stats = total;
      rep.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return rep;
    }
  }
}

EnergyReport ground_energy_search(const LatticeSpec& spec, const TiPlug& plug, const SearchOptions& opt) {
  if (opt.filter && !opt.threshold && !witness_passes(spec, opt.filter)) return filtered_minimum(spec, plug, opt);
  const auto t0 = std::chrono::steady_clock::now();
  const LatticeGraph g(spec);
  EnergyReport rep;
  rep.spec = spec;
  rep.plug_id = plug.id;
  rep.n0 = plug.n0;
  rep.threshold = opt.threshold;
  const int K = opt.solver.max_epr_slots;
  const bool plug_zero = plug.h_ti.cwiseAbs().maxCoeff() == 0.0 && plug.v_ti.cwiseAbs().maxCoeff() == 0.0;

  SingleCopySearch search(g, site_order(g, opt.coordinate_permutation), opt.symmetry_reduction);
  std::int64_t budget = opt.node_budget;
  bool complete = true;

  // Witness incumbent, when a striped tiling exists for this lattice.
  double witness_total = kInf, witness_copy = kInf;
  std::optional<Tiling> witness;
  if (spec.r >= 2 && (spec.boundary == Boundary::open || spec.n % 3 == 0)) {
    witness = striped_witness(spec, 0, 1);
    const auto s = tile_sector_energy(*witness, plug, opt.solver);
    if (s.method != SectorMethod::bound_only) witness_total = s.total;
    witness_copy = single_copy_energy(g, witness->codes(1), K).total;
  }

  // Stage 1: certified single-copy minimum.
  double m_limit = witness_copy;
  std::vector<Candidate> minimisers;
  complete &= collect_single(search, g, m_limit, false, true, K, budget, rep.stats, minimisers);
  if (minimisers.empty()) throw std::runtime_error("single-copy search found no tiling");
  double M = kInf;
  for (const auto& c : minimisers) M = std::min(M, c.energy);
  rep.single_copy_min = M;

  auto pair_total = [&](const Candidate& a, const Candidate& b, SectorRecord& rec) {
    rec.c1 = a.codes;
    rec.c2 = b.codes;
    rec.e1 = a.energy;
    rec.e2 = b.energy;
    rec.coupling = static_cast<double>(copy_coupling(g, a.codes, b.codes));
    rec.exact = a.exact && b.exact;
    rec.total = rec.e1 + rec.e2 + rec.coupling;
  };
  auto add_embedded = [&](SectorRecord& rec) {
    if (plug_zero) return;
    const auto e = embedded_2d_energy_codes(g, rec.c1, rec.c2, plug, opt.solver);
    rec.embedded2d = e.value;
    rec.exact = rec.exact && e.exact;
    rec.total += e.value;
  };

  // Incumbent when no witness applies: best pairing among single-copy minimisers.
  double U = witness_total;
  if (!opt.threshold && !std::isfinite(U)) {
    for (const auto& a : minimisers)
      for (const auto& b : minimisers) {
        SectorRecord rec;
        pair_total(a, b, rec);
        add_embedded(rec);
        if (rec.exact) U = std::min(U, rec.total);
      }
  }

  // Stage 2: every single-copy tiling that can still take part in a sector within the limit.
  double limit = opt.threshold ? *opt.threshold - M : U - M;
  std::vector<Candidate> cands;
  if (std::isfinite(limit)) {
    complete &= collect_single(search, g, limit, opt.threshold.has_value(), false, K, budget, rep.stats, cands);
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.energy != b.energy ? a.energy < b.energy : a.codes < b.codes;
  });
  rep.stats.single_copy_candidates = static_cast<std::int64_t>(cands.size());

  // Stage 3: pair the candidates.
  double best = opt.threshold ? kInf : U;
  double best_inexact = kInf;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t j = 0; j < cands.size(); ++j) {
      const double base = cands[i].energy + cands[j].energy;
      const double cut = opt.threshold ? *opt.threshold : best;
      if (opt.threshold ? base >= cut - kEps : base > cut + kEps) break;
      ++rep.stats.pairs_examined;
      if (++rep.stats.nodes > budget) {
        complete = false;
        break;
      }
      if (opt.filter && !opt.filter(g, cands[i].codes, cands[j].codes)) continue;
      SectorRecord rec;
      pair_total(cands[i], cands[j], rec);
      if (opt.threshold ? rec.total >= cut - kEps : rec.total > cut + kEps) continue;
      add_embedded(rec);
      ++rep.stats.sectors_evaluated;
      if (opt.threshold) {
        if (rec.total >= *opt.threshold - kEps) continue;
        if (!rec.exact) best_inexact = std::min(best_inexact, rec.total);
        best = std::min(best, rec.total);
        if (rep.records.size() < opt.max_records) rep.records.push_back(std::move(rec));
        else rep.records_truncated = true;
      } else {
        if (rec.total > best + kEps) continue;
        if (!rec.exact) {
          best_inexact = std::min(best_inexact, rec.total);
          continue;
        }
        if (rec.total < best - kEps) {
          best = rec.total;
          rep.records.erase(std::remove_if(rep.records.begin(), rep.records.end(),
                                           [&](const SectorRecord& r) { return r.total > best + kEps; }),
                            rep.records.end());
        }
        if (rep.records.size() < opt.max_records) rep.records.push_back(std::move(rec));
        else rep.records_truncated = true;
      }
    }
    if (!complete) break;
  }

  rep.complete = complete;
  if (opt.threshold) {
    // Nothing below the threshold was missed, so E0 on the filtered set is at least min(best, T).
    rep.lower_bound = std::min(best, *opt.threshold);
    rep.upper_bound = best;
    rep.global_min = best;
    rep.certified = complete && !std::isfinite(best_inexact);
  } else {
    if (rep.records.empty() && witness && (!opt.filter || opt.filter(g, witness->codes(1), witness->codes(2)))) {
      // The witness itself is optimal; record it for the argmin.
      SectorRecord rec;
      Candidate a{witness->codes(1), witness_copy, true}, b{witness->codes(2), witness_copy, true};
      pair_total(a, b, rec);
      add_embedded(rec);
      rep.records.push_back(rec);
    }
    rep.global_min = best;
    rep.upper_bound = best;
    rep.lower_bound = std::min(best, best_inexact);
    rep.certified = complete && best_inexact > best - kEps;
  }
  if (!rep.complete) {
    // The half-star root bound holds for each copy on its own.
    rep.lower_bound = std::min(rep.lower_bound, 2.0 * search.lower_bound(Codes(static_cast<std::size_t>(g.num_sites()), kUnassigned)));
  }
  if (!rep.records.empty()) rep.argmin = rep.records.front().tiling(spec);
  rep.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace rih
