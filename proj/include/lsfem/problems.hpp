#pragma once

#include <optional>
#include <string>

#include "lsfem/mesh.hpp"

namespace lsfem {

struct ExactSolution {
  ScalarField u;
  VectorField grad_u;
  VectorField sigma;      // -sqrt(eps) grad u
  ScalarField div_sigma;  // -sqrt(eps) lap u
};

/// Convection-diffusion-reaction problem
///   -eps lap u + beta.grad u + c u = f  on the unit square,  u = g on
/// the Dirichlet part of the boundary.
struct ProblemSpec {
  std::string name;
  double eps = 1.0;
  VectorField beta;
  ScalarField c;
  ScalarField f;
  ScalarField g;
  std::optional<ExactSolution> exact;
  /// inf over the domain of c - div(beta)/2; zero flags the borderline
  /// reaction case.
  double alpha0 = 0.0;
};

/// Known smooth-plus-boundary-layer solution with layers along x=1 and
/// y=1; beta = (1,1), c = 0, Dirichlet data from the exact trace.
ProblemSpec boundary_layer_problem(double eps);

/// Discontinuous inflow data transported along beta = (1/2, sqrt(3)/2),
/// producing an interior layer along y = sqrt(3) x + 1/5; f = 0, no
/// closed-form solution.
ProblemSpec interior_layer_problem(double eps);

/// Polynomial solution u = x y with beta = (1,1), c = 1; reproduced
/// exactly by the discrete spaces, so errors sit at roundoff.
ProblemSpec manufactured_problem(double eps = 1.0);

}  // namespace lsfem
