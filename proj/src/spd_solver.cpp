#include "eres/spd_solver.hpp"

#include <Eigen/CholmodSupport>

#include "eres/error.hpp"

namespace eres {

struct SpdSolver::Impl {
  Eigen::CholmodDecomposition<SparseMatrix, Eigen::Lower> chol;
};

SpdSolver::SpdSolver(const SparseMatrix& matrix) : size_(matrix.rows()) {
  if (matrix.rows() != matrix.cols()) throw InvalidInput("SpdSolver needs a square matrix");
  if (size_ == 0) return;
  // A positive definite matrix has a strictly positive diagonal; checking it
  // up front also keeps structurally empty blocks away from CHOLMOD.
  const Eigen::VectorXd diag = matrix.diagonal();
  if (!(diag.minCoeff() > 0.0))
    throw SingularBlock("matrix is not positive definite (non-positive diagonal entry)");
  impl_ = std::make_unique<Impl>();
  impl_->chol.cholmod().print = 0;
  impl_->chol.setMode(Eigen::CholmodSupernodalLLt);
  impl_->chol.compute(matrix);
  if (impl_->chol.info() != Eigen::Success)
    throw SingularBlock("matrix is not positive definite (Cholesky factorization failed)");
}

SpdSolver::~SpdSolver() = default;
SpdSolver::SpdSolver(SpdSolver&&) noexcept = default;
SpdSolver& SpdSolver::operator=(SpdSolver&&) noexcept = default;

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != size_) throw InvalidInput("right-hand side has the wrong length");
  if (size_ == 0) return {};
  Eigen::VectorXd x = impl_->chol.solve(rhs);
  return x;
}

Eigen::MatrixXd SpdSolver::solve(const Eigen::MatrixXd& rhs) const {
  if (rhs.rows() != size_) throw InvalidInput("right-hand side has the wrong row count");
  if (size_ == 0) return Eigen::MatrixXd(0, rhs.cols());
  Eigen::MatrixXd x = impl_->chol.solve(rhs);
  return x;
}

}  // namespace eres
