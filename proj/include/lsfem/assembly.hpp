#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "lsfem/spaces.hpp"

namespace lsfem {

/// Coefficients of the first-order system
///   sigma = -sqrt(eps) grad u,
///   sqrt(eps) div sigma + beta.grad u + c u = f.
struct Coefficients {
  double eps = 1.0;
  VectorField beta;
  ScalarField c;
  ScalarField f;
};

/// Essential value pinned on one product-space dof (flux dofs first, then
/// scalar dofs shifted by the flux dimension).
struct Constraint {
  int dof;
  double value;
};

struct AssemblyOptions {
  int quad_order = -1;   // volume rule; -1 picks 2*(highest basis degree)+2
  int edge_points = 4;   // Gauss points per boundary-penalty edge
  int load_order = 10;   // rule for the ||f||^2 constant term
};

/// Reduced symmetric system for one least-squares formulation. For any
/// reduced vector x with the constrained dofs at their pinned values, the
/// functional value is x'Ax - 2 b'x + constant_term.
struct LinearSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
  double constant_term = 0.0;
  int n_flux = 0;                 // product layout: flux block size
  int n_full = 0;                 // flux + scalar dims
  std::vector<int> free_to_full;  // reduced index -> product index
  std::vector<int> full_to_free;  // product index -> reduced index or -1
  Eigen::VectorXd pinned;         // product-length; constrained entries hold values
};

int product_dim(const FluxSpace& flux, const ScalarSpace& scalar);

/// Dirichlet constraints for a formulation: the whole boundary for
/// formulation 1, the closure of the inflow part for 2 and 3, with values
/// interpolated from g at the dof support points. Flux dofs are never
/// constrained.
std::vector<Constraint> essential_constraints(const FluxSpace& flux,
                                              const ScalarSpace& scalar,
                                              int formulation, const ScalarField& g);

/// Assembles the least-squares bilinear form a_i, load F_i and constant
/// ||f||^2 for formulation i in {1,2,3}, reduced by the constraints.
/// Formulations 2 and 3 add outflow-edge penalties with weights
/// eps^-1 h_e^-1 and h_e^-1.
LinearSystem assemble_system(const FluxSpace& flux, const ScalarSpace& scalar,
                             const Coefficients& co, int formulation,
                             const std::vector<Constraint>& constraints,
                             const AssemblyOptions& opts = {});

/// Gram matrix of the norm that pairs with formulation i: ||tau||^2 +
/// ||v||^2 + eps ||grad v||^2 plus the formulation's edge penalties; no
/// flux-scalar coupling. Reduced with the same dof elimination as
/// assemble_system given the same constraint set.
Eigen::SparseMatrix<double> assemble_norm_matrix(const FluxSpace& flux,
                                                 const ScalarSpace& scalar, double eps,
                                                 int formulation,
                                                 const std::vector<Constraint>& constraints,
                                                 const AssemblyOptions& opts = {});

/// Full product-space vector from a reduced one; constrained entries take
/// their pinned values.
Eigen::VectorXd expand(const LinearSystem& sys, const Eigen::VectorXd& reduced);

/// Splits a full product vector into flux and scalar coefficient blocks.
struct ProductView {
  Eigen::VectorXd flux;
  Eigen::VectorXd scalar;
};
ProductView split(const LinearSystem& sys, const Eigen::VectorXd& full);

}  // namespace lsfem
