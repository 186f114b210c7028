#include "rih/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "rih/parallel.hpp"

namespace rih {

double CsrMatrix::at(std::int64_t r, std::int64_t c) const {
  if (r < 0 || r >= rows || c < 0 || c >= cols) return 0.0;
  const auto b = col.begin() + row_ptr[static_cast<std::size_t>(r)];
  const auto e = col.begin() + row_ptr[static_cast<std::size_t>(r) + 1];
  const auto it = std::lower_bound(b, e, static_cast<std::uint32_t>(c));
  if (it == e || *it != c) return 0.0;
  return val[static_cast<std::size_t>(it - col.begin())];
}

void CsrMatrix::multiply(const double* x, double* y) const {
  parallel_ranges(rows, [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t r = b; r < e; ++r) {
      double acc = 0.0;
      for (std::int64_t k = row_ptr[static_cast<std::size_t>(r)]; k < row_ptr[static_cast<std::size_t>(r) + 1]; ++k)
        acc += val[static_cast<std::size_t>(k)] * x[col[static_cast<std::size_t>(k)]];
      y[r] = acc;
    }
  });
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (std::int64_t r = 0; r < rows; ++r)
    for (std::int64_t k = row_ptr[static_cast<std::size_t>(r)]; k < row_ptr[static_cast<std::size_t>(r) + 1]; ++k)
      m(r, col[static_cast<std::size_t>(k)]) = val[static_cast<std::size_t>(k)];
  return m;
}

CsrMatrix CsrMatrix::from_dense(const Eigen::MatrixXd& m, double drop) {
  CsrMatrix out;
  out.rows = m.rows();
  out.cols = m.cols();
  out.row_ptr.assign(1, 0);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c)) > drop) {
        out.col.push_back(static_cast<std::uint32_t>(c));
        out.val.push_back(m(r, c));
      }
    }
    out.row_ptr.push_back(static_cast<std::int64_t>(out.val.size()));
  }
  return out;
}

double min_eigenvalue_dense(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) throw std::invalid_argument("min_eigenvalue of an empty matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  return es.eigenvalues()(0);
}

EigenResult lanczos_min(const MatVec& op, std::int64_t dim, const EigenOptions& opt) {
  const std::int64_t cap = opt.max_matvecs > 0 ? opt.max_matvecs
                                               : static_cast<std::int64_t>(10.0 * std::sqrt(double(dim))) + 500;
  const std::int64_t by_mem = static_cast<std::int64_t>(opt.memory_budget / (8 * static_cast<std::size_t>(dim)));
  const int m = static_cast<int>(std::clamp<std::int64_t>(std::min<std::int64_t>(by_mem, dim), 2, 64));

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(dim);
  for (std::int64_t i = 0; i < dim; ++i) v[i] = nd(rng);
  v.normalize();

  Eigen::MatrixXd V(dim, m);
  Eigen::VectorXd w(dim);
  std::vector<double> alpha, beta;
  EigenResult res;
  double theta = std::numeric_limits<double>::infinity();

  while (res.matvecs < cap) {
    V.col(0) = v;
    alpha.clear();
    beta.clear();
    Eigen::VectorXd y;
    int used = 0;
    for (int j = 0; j < m; ++j) {
      op(V.col(j).data(), w.data());
      ++res.matvecs;
      const double a = V.col(j).dot(w);
      alpha.push_back(a);
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd h = V.leftCols(j + 1).transpose() * w;
        w.noalias() -= V.leftCols(j + 1) * h;
      }
      const double b = w.norm();
      used = j + 1;

      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), used);
      Eigen::VectorXd sub(std::max(0, used - 1));
      for (int k = 0; k + 1 < used; ++k) sub[k] = beta[static_cast<std::size_t>(k)];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      if (es.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolve failed");
      theta = es.eigenvalues()(0);
      y = es.eigenvectors().col(0);
      res.residual = b * std::abs(y[used - 1]);
      const double scale = std::max(1.0, std::abs(theta));
      if (res.residual <= opt.tol || b <= 1e-14 * scale) {
        res.value = theta;
        return res;
      }
      if (j + 1 == m || res.matvecs >= cap) break;
      beta.push_back(b);
      V.col(j + 1) = w / b;
    }
    v = V.leftCols(used) * y;
    v.normalize();
  }
  throw std::runtime_error("lanczos did not converge: residual " + std::to_string(res.residual) + " after " +
                           std::to_string(res.matvecs) + " matvecs");
}

EigenResult min_eigenvalue(const MatVec& op, std::int64_t dim, const EigenOptions& opt) {
  if (dim <= 0) throw std::invalid_argument("min_eigenvalue: empty operator");
  if (dim < opt.dense_below) {
    Eigen::MatrixXd m(dim, dim);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd col(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
      e[i] = 1.0;
      op(e.data(), col.data());
      m.col(i) = col;
      e[i] = 0.0;
    }
    EigenResult r;
    r.value = min_eigenvalue_dense(0.5 * (m + m.transpose()));
    r.dense = true;
    r.matvecs = dim;
    return r;
  }
  return lanczos_min(op, dim, opt);
}

EigenResult min_eigenvalue(const CsrMatrix& m, const EigenOptions& opt) {
  if (m.rows != m.cols) throw std::invalid_argument("min_eigenvalue: matrix not square");
  if (m.rows < opt.dense_below) {
    EigenResult r;
    r.value = min_eigenvalue_dense(m.to_dense());
    r.dense = true;
    return r;
  }
  return lanczos_min([&](const double* x, double* y) { m.multiply(x, y); }, m.rows, opt);
}

std::int64_t product_dimension(const std::vector<int>& dims, std::int64_t cap) {
  std::int64_t total = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("site dimension must be positive");
    if (total > cap / d) throw std::overflow_error("state dimension exceeds cap " + std::to_string(cap));
    total *= d;
  }
  if (total > cap) throw std::overflow_error("state dimension exceeds cap " + std::to_string(cap));
  return total;
}

void apply_edge_sum(const std::vector<int>& dims, const std::vector<EdgeOperator>& edges, const double* x,
                    double* y) {
  const int N = static_cast<int>(dims.size());
  std::vector<std::int64_t> stride(static_cast<std::size_t>(N));
  std::int64_t total = 1;
  for (int i = N - 1; i >= 0; --i) {
    stride[static_cast<std::size_t>(i)] = total;
    total *= dims[static_cast<std::size_t>(i)];
  }
  for (const auto& e : edges) {
    if (e.a < 0 || e.a >= N || e.b < 0 || e.b >= N || e.a == e.b) throw std::invalid_argument("bad edge operator");
    const std::int64_t ld = std::int64_t{dims[static_cast<std::size_t>(e.a)]} * dims[static_cast<std::size_t>(e.b)];
    if (!e.local || e.local->rows != ld || e.local->cols != ld)
      throw std::invalid_argument("edge operator dimension mismatch");
  }
  parallel_ranges(total, [&](std::int64_t begin, std::int64_t end) {
    std::fill(y + begin, y + end, 0.0);
    for (const auto& e : edges) {
      const std::int64_t sa = stride[static_cast<std::size_t>(e.a)];
      const std::int64_t sb = stride[static_cast<std::size_t>(e.b)];
      const int da = dims[static_cast<std::size_t>(e.a)];
      const int db = dims[static_cast<std::size_t>(e.b)];
      const CsrMatrix& L = *e.local;
      for (std::int64_t i = begin; i < end; ++i) {
        const std::int64_t ia = (i / sa) % da;
        const std::int64_t ib = (i / sb) % db;
        const std::int64_t base = i - ia * sa - ib * sb;
        const std::int64_t row = ia * db + ib;
        double acc = 0.0;
        for (std::int64_t k = L.row_ptr[static_cast<std::size_t>(row)]; k < L.row_ptr[static_cast<std::size_t>(row) + 1];
             ++k) {
          const std::int64_t c = L.col[static_cast<std::size_t>(k)];
          acc += L.val[static_cast<std::size_t>(k)] * x[base + (c / db) * sa + (c % db) * sb];
        }
        y[i] += acc;
      }
    }
  });
}

}  // namespace rih
