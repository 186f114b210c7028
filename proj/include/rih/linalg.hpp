#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace rih {

/// Real compressed-sparse-row matrix with sorted column indices per row.
struct CsrMatrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<std::int64_t> row_ptr{0};
  std::vector<std::uint32_t> col;
  std::vector<double> val;

  std::int64_t nnz() const { return static_cast<std::int64_t>(val.size()); }
  /// Entry lookup by binary search; 0 when absent.
  double at(std::int64_t r, std::int64_t c) const;
  void multiply(const double* x, double* y) const;
  Eigen::MatrixXd to_dense() const;
  static CsrMatrix from_dense(const Eigen::MatrixXd& m, double drop = 0.0);
};

using MatVec = std::function<void(const double* x, double* y)>;

struct EigenOptions {
  double tol = 1e-10;
  std::int64_t dense_below = 4096;  // dense solve for dim < dense_below
  std::int64_t max_matvecs = -1;    // -1: 10 * sqrt(dim) + 500
  std::uint64_t seed = 0x5eed;
  std::size_t memory_budget = std::size_t{512} << 20;  // bytes for the Krylov basis
};

struct EigenResult {
  double value = 0.0;
  double residual = 0.0;
  std::int64_t matvecs = 0;
  bool dense = false;
};

/// Smallest eigenvalue of a symmetric operator given as a matvec.
/// Throws std::runtime_error when the iterative solve does not converge.
EigenResult min_eigenvalue(const MatVec& op, std::int64_t dim, const EigenOptions& opt = {});
EigenResult min_eigenvalue(const CsrMatrix& m, const EigenOptions& opt = {});
double min_eigenvalue_dense(const Eigen::MatrixXd& m);

/// Explicitly restarted Lanczos with full reorthogonalisation.
EigenResult lanczos_min(const MatVec& op, std::int64_t dim, const EigenOptions& opt);

/// A two-site operator inserted on sites (a, b) of a mixed-radix product space.
/// The local row index is ia * dims[b] + ib.
struct EdgeOperator {
  int a = 0;
  int b = 0;
  const CsrMatrix* local = nullptr;
};

/// y = sum_e (local_e on sites a_e, b_e) x. Sites are ordered first-most-significant.
/// Work is split over output rows, so the result does not depend on the thread count.
void apply_edge_sum(const std::vector<int>& dims, const std::vector<EdgeOperator>& edges, const double* x,
                    double* y);

/// Product of dims, throwing std::overflow_error above cap.
std::int64_t product_dimension(const std::vector<int>& dims, std::int64_t cap);

}  // namespace rih
