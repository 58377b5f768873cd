#pragma once

#include <Eigen/Core>
#include <memory>

#include "eres/graph.hpp"

namespace eres {

/// Sparse Cholesky factorization of a symmetric positive-definite matrix,
/// computed once and reused for any number of right-hand sides.
///
/// Backed by CHOLMOD (supernodal, fill-reducing ordering). Not thread-safe:
/// use one instance per thread.
class SpdSolver {
public:
  /// Throws SingularBlock when the matrix is not numerically positive definite.
  explicit SpdSolver(const SparseMatrix& matrix);
  ~SpdSolver();
  SpdSolver(SpdSolver&&) noexcept;
  SpdSolver& operator=(SpdSolver&&) noexcept;

  Eigen::Index size() const noexcept { return size_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  Eigen::Index size_ = 0;
};

}  // namespace eres
