#include "lsfem/linsolve.hpp"

#include <stdexcept>
#include <string>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

namespace lsfem {

SolveReport solve_spd(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                      const SolveOptions& opts) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw std::invalid_argument("solve_spd: dimension mismatch");

  SolveReport rep;
  const Eigen::Index n = A.rows();
  if (n == 0) {
    rep.method = "ldlt";
    return rep;
  }
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    rep.method = "ldlt";
    rep.x = Eigen::VectorXd::Zero(n);
    return rep;
  }

  if (n <= opts.direct_max_dofs) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(A);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("solve_spd: LDLT factorization failed");
    const auto& D = ldlt.vectorD();
    for (Eigen::Index i = 0; i < D.size(); ++i) {
      if (!(D[i] > 0.0))
        throw std::runtime_error("solve_spd: matrix not positive definite (pivot " +
                                 std::to_string(i) + " = " + std::to_string(D[i]) + ")");
    }
    rep.x = ldlt.solve(b);
    rep.method = "ldlt";
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(opts.cg_rel_tol);
    cg.setMaxIterations(static_cast<Eigen::Index>(opts.cg_max_iter_factor) * n);
    cg.compute(A);
    rep.x = cg.solve(b);
    if (cg.info() != Eigen::Success)
      throw std::runtime_error("solve_spd: conjugate gradients did not converge (" +
                               std::to_string(cg.iterations()) + " iterations, error " +
                               std::to_string(cg.error()) + ")");
    rep.method = "cg";
    rep.iterations = static_cast<int>(cg.iterations());
  }
  rep.rel_residual = (b - A * rep.x).norm() / bnorm;
  return rep;
}

}  // namespace lsfem
