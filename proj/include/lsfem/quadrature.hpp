#pragma once

#include <vector>

namespace lsfem {

/// Barycentric quadrature point on the triangle; rule weights sum to 1, so
///   int_K f dx  ~=  |K| * sum_i w_i f(l0_i p0 + l1_i p1 + l2_i p2).
struct QuadPoint {
  double l0, l1, l2, w;
};

struct TriangleRule {
  int degree = 0;  // highest polynomial degree integrated exactly
  std::vector<QuadPoint> points;
};

/// Smallest stored symmetric rule exact for polynomials of the given
/// degree; throws past degree 10.
const TriangleRule& triangle_rule(int order);

/// Gauss-Legendre rule on [0,1]; weights sum to 1, so
///   int_e f ds  ~=  |e| * sum_i w_i f(x0 + t_i (x1 - x0)).
struct EdgeRule {
  std::vector<double> t;
  std::vector<double> w;
};

const EdgeRule& edge_rule(int points);

}  // namespace lsfem
