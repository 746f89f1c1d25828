#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "lsfem/linsolve.hpp"

using namespace lsfem;

namespace {

Eigen::SparseMatrix<double> from_dense(const Eigen::MatrixXd& M) {
  Eigen::SparseMatrix<double> A(M.rows(), M.cols());
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (M(i, j) != 0.0) trips.emplace_back(i, j, M(i, j));
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

// 1D Laplacian stiffness: tridiag(-1, 2, -1), SPD for any n.
Eigen::SparseMatrix<double> laplacian_1d(int n) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    M(i, i) = 2.0;
    if (i > 0) M(i, i - 1) = -1.0;
    if (i + 1 < n) M(i, i + 1) = -1.0;
  }
  return from_dense(M);
}

}  // namespace

TEST_CASE("direct solve of a 2x2 system matches the hand solution") {
  Eigen::MatrixXd M(2, 2);
  M << 4.0, 1.0, 1.0, 3.0;
  Eigen::VectorXd b(2);
  b << 1.0, 2.0;
  const auto rep = solve_spd(from_dense(M), b);
  CHECK(rep.method == "ldlt");
  CHECK(rep.iterations == 0);
  // Cramer: x = (3-2)/11, y = (8-1)/11
  CHECK(rep.x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
  CHECK(rep.x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-14));
  CHECK(rep.rel_residual < 1e-14);
}

TEST_CASE("conjugate gradient path kicks in above the direct cutoff") {
  const int n = 50;
  const auto A = laplacian_1d(n);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd b = A * ones;

  SolveOptions opts;
  opts.direct_max_dofs = 1;  // force the iterative branch
  const auto rep = solve_spd(A, b, opts);
  CHECK(rep.method == "cg");
  CHECK(rep.iterations > 0);
  CHECK((rep.x - ones).lpNorm<Eigen::Infinity>() < 1e-8);
  CHECK(rep.rel_residual < 1e-10);

  // same system through the factorization for comparison
  const auto direct = solve_spd(A, b);
  CHECK(direct.method == "ldlt");
  CHECK((direct.x - ones).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("indefinite matrix is rejected with a pivot diagnostic") {
  Eigen::MatrixXd M(2, 2);
  M << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
  Eigen::VectorXd b(2);
  b << 1.0, 1.0;
  CHECK_THROWS_WITH_AS(solve_spd(from_dense(M), b),
                       doctest::Contains("pivot"), std::runtime_error);
}

TEST_CASE("degenerate inputs") {
  SUBCASE("empty system") {
    Eigen::SparseMatrix<double> A(0, 0);
    const auto rep = solve_spd(A, Eigen::VectorXd());
    CHECK(rep.x.size() == 0);
    CHECK(rep.rel_residual == 0.0);
  }
  SUBCASE("zero right-hand side short-circuits to the zero vector") {
    const auto rep = solve_spd(laplacian_1d(5), Eigen::VectorXd::Zero(5));
    CHECK(rep.x.size() == 5);
    CHECK(rep.x.norm() == 0.0);
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(solve_spd(laplacian_1d(5), Eigen::VectorXd::Zero(4)),
                    std::invalid_argument);
  }
}
