#include <stdexcept>
#include <random>
#include <sstream>

#include "doctest.h"
#include "rih/hamiltonian.hpp"
#include "rih/instance.hpp"
#include "rih/tiling.hpp"
#include "rih/verify.hpp"

using namespace rih;

namespace {

const TwoBodyTerm& zero_term() {
  static const auto t = cached_site_term(toy_plug("zero"));
  return *t;
}

}  // namespace

TEST_CASE("plug validation") {
  Eigen::MatrixXd ok = Eigen::MatrixXd::Identity(4, 4);
  Eigen::MatrixXd asym = ok;
  asym(0, 1) = 0.5;
  Eigen::MatrixXd neg = -ok;
  CHECK_NOTHROW(TiPlug::make("p", 2, ok, ok));
  CHECK_THROWS_AS(TiPlug::make("p", 2, asym, ok), std::invalid_argument);
  CHECK_THROWS_AS(TiPlug::make("p", 2, ok, neg), std::invalid_argument);
  CHECK_THROWS_AS(TiPlug::make("p", 3, ok, ok), std::invalid_argument);
  CHECK_THROWS(toy_plug("nope"));
  CHECK(toy_plug("zero").d == 1);
  CHECK(toy_plug("afm").d == 2);
  CHECK(toy_plug("ff").diagonal());
}

TEST_CASE("term shape") {
  const auto& t = zero_term();
  CHECK(t.site_dim() == 1296);
  CHECK(t.matrix.rows == 1296 * 1296);
  const auto& afm = *cached_site_term(toy_plug("afm"));
  CHECK(afm.site_dim() == 2592);
  const auto single = build_single_copy_term();
  CHECK(single.site_dim() == 36);
}

TEST_CASE("every plug's term is hermitian, psd, swap-symmetric and tile-diagonal") {
  for (const auto& p : toy_plugs()) {
    const auto t = cached_site_term(p);
    const auto rep = check_term_symmetries(*t);
    CHECK_MESSAGE(rep.ok(), p.id);
    CHECK(rep.min_eigenvalue >= -1e-9);
    CHECK(tile_diagonality_check(*t));
  }
  const auto single = build_single_copy_term();
  CHECK(check_term_symmetries(single).ok());
  CHECK(tile_diagonality_check(single));
}

TEST_CASE("symmetry checks catch broken matrices") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);  // two sites of dimension 2
  m(1, 2) = 1.0;                                      // |01><10| alone: not hermitian
  auto rep = check_term_symmetries(CsrMatrix::from_dense(m), 2);
  CHECK_FALSE(rep.hermitian);
  m.setZero();
  m(1, 1) = 1.0;  // |01><01|: hermitian, psd, not swap-symmetric
  rep = check_term_symmetries(CsrMatrix::from_dense(m), 2);
  CHECK(rep.hermitian);
  CHECK(rep.psd);
  CHECK_FALSE(rep.swap_symmetric);
  m(1, 1) = -1.0;
  CHECK_FALSE(check_term_symmetries(CsrMatrix::from_dense(m), 2).psd);
}

TEST_CASE("a single edge block has the classical cost as its ground energy") {
  // One edge alone never frustrates the projectors: every demand is satisfiable.
  std::mt19937_64 rng(17);
  const auto& t = zero_term();
  for (int trial = 0; trial < 60; ++trial) {
    const int a1 = static_cast<int>(rng() % 9), a2 = static_cast<int>(rng() % 9);
    const int b1 = static_cast<int>(rng() % 9), b2 = static_cast<int>(rng() % 9);
    const CsrMatrix blk = term_block(t, a1 * 9 + a2, b1 * 9 + b2);
    const double expect = edge_classical_cost(a1, b1) + edge_classical_cost(a2, b2) +
                          ((a1 / 3 == b1 / 3 && a2 / 3 == b2 / 3) ? 1.0 : 0.0);
    CHECK(min_eigenvalue_dense(blk.to_dense()) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("term hash is golden and independent of the instance") {
  CHECK(hex64(term_hash(zero_term().matrix)) == kGoldenTermHash);
  const TwoBodyTerm fresh = build_site_term(toy_plug("zero"));
  CHECK(term_hash(fresh.matrix) == term_hash(zero_term().matrix));
  const auto a = reduction("1", 2, toy_plug("zero"));
  const auto b = reduction("10", 3, toy_plug("zero"));
  CHECK(term_hash(a.term->matrix) == term_hash(b.term->matrix));
  CHECK(a.spec.n == 15);
  TermCoefficients c;
  c.loop = 3;
  CHECK(term_hash(build_site_term(toy_plug("zero"), c).matrix) != term_hash(zero_term().matrix));
}

TEST_CASE("global matvec equals an edge-by-edge loop") {
  const auto single = build_single_copy_term();
  const LatticeSpec spec(1, 3);
  const std::int64_t D = single.site_dim();
  const std::int64_t dim = D * D * D;
  std::mt19937_64 rng(9);
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (auto& v : x) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  const auto y = global_matvec(spec, single, x);
  std::vector<double> ref(x.size(), 0.0);
  const std::vector<std::pair<int, int>> es{{0, 1}, {0, 2}, {1, 2}};
  const std::int64_t stride[3] = {D * D, D, 1};
  for (std::int64_t i = 0; i < dim; ++i) {
    const std::int64_t s[3] = {i / (D * D), i / D % D, i % D};
    for (auto [a, b] : es) {
      const std::int64_t row = s[a] * D + s[b];
      for (auto k = single.matrix.row_ptr[row]; k < single.matrix.row_ptr[row + 1]; ++k) {
        const std::int64_t col = single.matrix.col[k];
        const std::int64_t j = i + (col / D - s[a]) * stride[a] + (col % D - s[b]) * stride[b];
        ref[static_cast<std::size_t>(i)] += single.matrix.val[k] * x[static_cast<std::size_t>(j)];
      }
    }
  }
  double err = 0;
  for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(ref[i] - y[i]));
  CHECK(err < 1e-12);
}

TEST_CASE("matrix market export") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 0) = 1.5;
  m(2, 1) = -0.25;
  std::ostringstream os;
  write_matrix_market(os, CsrMatrix::from_dense(m), {"hello"});
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("%%MatrixMarket matrix coordinate real general", 0) == 0);
  std::getline(in, line);
  CHECK(line == "% hello");
  std::getline(in, line);
  CHECK(line == "3 3 2");
  std::getline(in, line);
  CHECK(line == "1 1 1.5");
  const auto header = term_header(zero_term());
  CHECK_FALSE(header.empty());
}
