#include <stdexcept>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"
#include "rih/linalg.hpp"
#include "rih/parallel.hpp"

using namespace rih;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng, double density = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (u(rng) * 0.5 + 0.5 < density) m(i, j) = m(j, i) = u(rng);
  return m;
}

// Explicit Kronecker embedding of a two-site operator, the slow way.
Eigen::MatrixXd embed(const std::vector<int>& dims, int a, int b, const Eigen::MatrixXd& local) {
  int total = 1;
  for (int d : dims) total *= d;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(total, total);
  for (int row = 0; row < total; ++row)
    for (int col = 0; col < total; ++col) {
      int rr = row, cc = col;
      bool others_equal = true;
      int ra = 0, rb = 0, ca = 0, cb = 0;
      for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
        const int xr = rr % dims[static_cast<std::size_t>(s)], xc = cc % dims[static_cast<std::size_t>(s)];
        rr /= dims[static_cast<std::size_t>(s)];
        cc /= dims[static_cast<std::size_t>(s)];
        if (s == a) ra = xr, ca = xc;
        else if (s == b) rb = xr, cb = xc;
        else if (xr != xc) others_equal = false;
      }
      if (others_equal) out(row, col) = local(ra * dims[static_cast<std::size_t>(b)] + rb, ca * dims[static_cast<std::size_t>(b)] + cb);
    }
  return out;
}

}  // namespace

TEST_CASE("csr round trip and lookup") {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd m = random_symmetric(17, rng, 0.3);
  const CsrMatrix c = CsrMatrix::from_dense(m);
  CHECK((c.to_dense() - m).norm() == 0.0);
  for (int i = 0; i < 17; ++i)
    for (int j = 0; j < 17; ++j) CHECK(c.at(i, j) == m(i, j));
  Eigen::VectorXd x = Eigen::VectorXd::Random(17), y(17);
  c.multiply(x.data(), y.data());
  CHECK((y - m * x).norm() < 1e-12);
}

TEST_CASE("lanczos agrees with dense diagonalisation") {
  std::mt19937_64 rng(2);
  for (int n : {50, 300, 900}) {
    const Eigen::MatrixXd m = random_symmetric(n, rng, 0.05);
    const CsrMatrix c = CsrMatrix::from_dense(m);
    EigenOptions opt;
    opt.dense_below = 0;
    const EigenResult it = min_eigenvalue(c, opt);
    CHECK_FALSE(it.dense);
    CHECK(it.value == doctest::Approx(min_eigenvalue_dense(m)).epsilon(1e-9));
    CHECK(it.residual <= 1e-10 * std::max(1.0, std::abs(it.value)) + 1e-10);
  }
}

TEST_CASE("lanczos surfaces non-convergence") {
  std::mt19937_64 rng(3);
  const CsrMatrix c = CsrMatrix::from_dense(random_symmetric(400, rng));
  EigenOptions opt;
  opt.dense_below = 0;
  opt.max_matvecs = 3;
  CHECK_THROWS_AS(min_eigenvalue(c, opt), std::runtime_error);
}

TEST_CASE("edge sum matches the explicit Kronecker sum") {
  std::mt19937_64 rng(4);
  const std::vector<int> dims{2, 3, 2, 2};
  const Eigen::MatrixXd l01 = random_symmetric(6, rng), l23 = random_symmetric(4, rng), l02 = random_symmetric(4, rng);
  const CsrMatrix c01 = CsrMatrix::from_dense(l01), c23 = CsrMatrix::from_dense(l23), c02 = CsrMatrix::from_dense(l02);
  const std::vector<EdgeOperator> ops{{0, 1, &c01}, {2, 3, &c23}, {0, 2, &c02}};
  const Eigen::MatrixXd full = embed(dims, 0, 1, l01) + embed(dims, 2, 3, l23) + embed(dims, 0, 2, l02);
  Eigen::VectorXd x = Eigen::VectorXd::Random(24), y(24);
  apply_edge_sum(dims, ops, x.data(), y.data());
  CHECK((y - full * x).norm() < 1e-12);
}

TEST_CASE("edge sum is bit-identical across thread counts") {
  std::mt19937_64 rng(5);
  const std::vector<int> dims(8, 4);
  const CsrMatrix loc = CsrMatrix::from_dense(random_symmetric(16, rng, 0.4));
  std::vector<EdgeOperator> ops;
  for (int i = 0; i < 8; ++i) ops.push_back({i, (i + 1) % 8, &loc});
  const std::int64_t dim = product_dimension(dims, std::int64_t{1} << 20);
  std::vector<double> x(static_cast<std::size_t>(dim)), y1(x.size()), y4(x.size());
  for (auto& v : x) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  set_thread_count(1);
  apply_edge_sum(dims, ops, x.data(), y1.data());
  set_thread_count(4);
  apply_edge_sum(dims, ops, x.data(), y4.data());
  set_thread_count(0);
  CHECK(y1 == y4);
}

TEST_CASE("product dimension respects the cap") {
  CHECK(product_dimension({4, 4, 4}, 64) == 64);
  CHECK_THROWS(product_dimension({4, 4, 4}, 63));
}

TEST_CASE("parallel ranges cover the range once and rethrow") {
  std::vector<int> hits(10000, 0);
  parallel_ranges(10000, [&](std::int64_t b, std::int64_t e) {
    for (auto i = b; i < e; ++i) ++hits[static_cast<std::size_t>(i)];
  }, 16);
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS(parallel_ranges(100, [](std::int64_t, std::int64_t) { throw std::runtime_error("x"); }, 1));
}
