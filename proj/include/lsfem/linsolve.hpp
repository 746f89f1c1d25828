#pragma once

#include <string>

#include <Eigen/Sparse>

namespace lsfem {

struct SolveOptions {
  int direct_max_dofs = 200000;  // above this, switch to conjugate gradients
  double cg_rel_tol = 1e-12;
  int cg_max_iter_factor = 20;   // iteration cap = factor * dofs
};

struct SolveReport {
  Eigen::VectorXd x;
  std::string method;        // "ldlt" or "cg"
  int iterations = 0;        // cg only
  double rel_residual = 0.0; // |b - Ax| / |b|, recomputed after the solve
};

/// Solves the symmetric positive definite system A x = b, directly for
/// moderate sizes and by Jacobi-preconditioned conjugate gradients above
/// the cutoff. Throws if the factorization or iteration fails.
SolveReport solve_spd(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                      const SolveOptions& opts = {});

}  // namespace lsfem
