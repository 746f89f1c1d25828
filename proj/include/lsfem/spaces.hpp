#pragma once

#include <array>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "lsfem/mesh.hpp"

namespace lsfem {

/// Continuous Lagrange space of degree 1 or 2. Local dofs 0..2 sit at the
/// triangle vertices, 3..5 (degree 2 only) at the edges opposite them.
/// Global ids are vertex ids, then num_vertices + edge id.
class ScalarSpace {
 public:
  static constexpr int kMaxDofs = 6;

  ScalarSpace(const Mesh& mesh, int degree);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int dofs_per_cell() const { return degree_ == 1 ? 3 : 6; }
  int num_dofs() const;
  int global_dof(int t, int j) const;
  /// Support point of a global dof: vertex or edge midpoint.
  Vec2 dof_point(int g) const;

  /// Values and physical gradients of all local basis functions at a
  /// barycentric point; entries past dofs_per_cell() are untouched.
  void eval(int t, const std::array<double, 3>& lambda,
            std::array<double, kMaxDofs>& values,
            std::array<Vec2, kMaxDofs>& grads) const;

  double value(int t, const std::array<double, 3>& lambda,
               const Eigen::VectorXd& coeffs) const;
  Vec2 gradient(int t, const std::array<double, 3>& lambda,
                const Eigen::VectorXd& coeffs) const;

  /// Sorted global dofs supported on edges carrying one of the tags;
  /// vertex dofs at the endpoints are included, so the result covers the
  /// closure of the tagged boundary part.
  std::vector<int> boundary_dofs(std::initializer_list<BoundaryTag> tags) const;

 private:
  const Mesh* mesh_;
  int degree_;
};

/// H(div)-conforming Raviart-Thomas space of index 0 or 1. Degrees of
/// freedom are normal-flux moments taken against the global edge normal
/// and the global lower-to-higher parametrization, so shared dofs agree
/// between neighbors without per-cell sign flips; index 1 adds two cell
/// average moments. Global ids: edge id (index 0) or 2*edge+m (index 1),
/// then 2*num_edges + 2*t + m for the cell moments.
class FluxSpace {
 public:
  static constexpr int kMaxDofs = 8;

  FluxSpace(const Mesh& mesh, int index);

  const Mesh& mesh() const { return *mesh_; }
  int index() const { return index_; }
  int dofs_per_cell() const { return index_ == 0 ? 3 : 8; }
  int num_dofs() const;
  int global_dof(int t, int j) const;

  /// Vector values and divergences of all local basis functions at a
  /// barycentric point; entries past dofs_per_cell() are untouched.
  void eval(int t, const std::array<double, 3>& lambda,
            std::array<Vec2, kMaxDofs>& values,
            std::array<double, kMaxDofs>& divs) const;

  Vec2 value(int t, const std::array<double, 3>& lambda,
             const Eigen::VectorXd& coeffs) const;
  double divergence(int t, const std::array<double, 3>& lambda,
                    const Eigen::VectorXd& coeffs) const;

 private:
  const Mesh* mesh_;
  int index_;
  std::vector<Eigen::Matrix<double, 8, 8>> coeff_;  // index 1: generator weights
};

}  // namespace lsfem
