#include "lsfem/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lsfem/quadrature.hpp"

namespace lsfem {

namespace {

inline Vec2 rot90(const Vec2& v) { return Vec2(-v.y(), v.x()); }

/// Gradients of the three barycentric coordinates of triangle t.
std::array<Vec2, 3> barycentric_gradients(const Mesh& m, int t) {
  const auto& T = m.triangles[t];
  const double two_area = 2.0 * m.area(t);
  std::array<Vec2, 3> g;
  for (int k = 0; k < 3; ++k)
    g[k] = rot90(m.vertices[T.v[(k + 2) % 3]] - m.vertices[T.v[(k + 1) % 3]]) / two_area;
  return g;
}

/// Raviart-Thomas generator values and divergences in the frame
/// xi = (x - center)/h; index 1 uses all eight, index 0 is closed-form.
void rt1_generators(const Vec2& xi, double h, std::array<Vec2, 8>& val,
                    std::array<double, 8>& div) {
  const double x = xi.x(), y = xi.y();
  val = {Vec2(1, 0), Vec2(x, 0), Vec2(y, 0), Vec2(0, 1),
         Vec2(0, x), Vec2(0, y), Vec2(x * x, x * y), Vec2(x * y, y * y)};
  div = {0, 1 / h, 0, 0, 0, 1 / h, 3 * x / h, 3 * y / h};
}

}  // namespace

ScalarSpace::ScalarSpace(const Mesh& mesh, int degree) : mesh_(&mesh), degree_(degree) {
  if (degree != 1 && degree != 2)
    throw std::invalid_argument("ScalarSpace: degree must be 1 or 2");
}

int ScalarSpace::num_dofs() const {
  return mesh_->num_vertices() + (degree_ == 2 ? mesh_->num_edges() : 0);
}

int ScalarSpace::global_dof(int t, int j) const {
  if (j < 3) return mesh_->triangles[t].v[j];
  return mesh_->num_vertices() + mesh_->edge_of(t, j - 3);
}

Vec2 ScalarSpace::dof_point(int g) const {
  if (g < mesh_->num_vertices()) return mesh_->vertices[g];
  return mesh_->edge_midpoint(g - mesh_->num_vertices());
}

void ScalarSpace::eval(int t, const std::array<double, 3>& lambda,
                       std::array<double, kMaxDofs>& values,
                       std::array<Vec2, kMaxDofs>& grads) const {
  const auto dl = barycentric_gradients(*mesh_, t);
  if (degree_ == 1) {
    for (int k = 0; k < 3; ++k) {
      values[k] = lambda[k];
      grads[k] = dl[k];
    }
    return;
  }
  for (int k = 0; k < 3; ++k) {
    values[k] = lambda[k] * (2.0 * lambda[k] - 1.0);
    grads[k] = (4.0 * lambda[k] - 1.0) * dl[k];
  }
  for (int j = 0; j < 3; ++j) {
    const int a = (j + 1) % 3, b = (j + 2) % 3;
    values[3 + j] = 4.0 * lambda[a] * lambda[b];
    grads[3 + j] = 4.0 * (lambda[a] * dl[b] + lambda[b] * dl[a]);
  }
}

double ScalarSpace::value(int t, const std::array<double, 3>& lambda,
                          const Eigen::VectorXd& coeffs) const {
  std::array<double, kMaxDofs> v;
  std::array<Vec2, kMaxDofs> g;
  eval(t, lambda, v, g);
  double out = 0.0;
  for (int j = 0; j < dofs_per_cell(); ++j) out += coeffs[global_dof(t, j)] * v[j];
  return out;
}

Vec2 ScalarSpace::gradient(int t, const std::array<double, 3>& lambda,
                           const Eigen::VectorXd& coeffs) const {
  std::array<double, kMaxDofs> v;
  std::array<Vec2, kMaxDofs> g;
  eval(t, lambda, v, g);
  Vec2 out = Vec2::Zero();
  for (int j = 0; j < dofs_per_cell(); ++j) out += coeffs[global_dof(t, j)] * g[j];
  return out;
}

std::vector<int> ScalarSpace::boundary_dofs(
    std::initializer_list<BoundaryTag> tags) const {
  std::vector<int> out;
  for (int e = 0; e < mesh_->num_edges(); ++e) {
    const auto tag = mesh_->edges[e].tag;
    if (std::find(tags.begin(), tags.end(), tag) == tags.end()) continue;
    out.push_back(mesh_->edges[e].v[0]);
    out.push_back(mesh_->edges[e].v[1]);
    if (degree_ == 2) out.push_back(mesh_->num_vertices() + e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FluxSpace::FluxSpace(const Mesh& mesh, int index) : mesh_(&mesh), index_(index) {
  if (index != 0 && index != 1)
    throw std::invalid_argument("FluxSpace: index must be 0 or 1");
  if (index == 0) return;

  // index 1: per cell, express the basis dual to the global dof
  // functionals in the generator frame by inverting the 8x8 moment matrix
  const EdgeRule& er = edge_rule(3);
  const TriangleRule& tr = triangle_rule(2);
  coeff_.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& T = mesh.triangles[t];
    const Vec2 pc = mesh.barycenter(t);
    const double h = mesh.diameter(t);
    Eigen::Matrix<double, 8, 8> V = Eigen::Matrix<double, 8, 8>::Zero();
    std::array<Vec2, 8> gv;
    std::array<double, 8> gd;

    for (int i = 0; i < 3; ++i) {
      const int e = mesh.edge_of(t, i);
      const Vec2 lo = mesh.vertices[mesh.edges[e].v[0]];
      const Vec2 hi = mesh.vertices[mesh.edges[e].v[1]];
      const Vec2 n = mesh.edge_normal(e);
      const double len = mesh.edge_length(e);
      for (std::size_t q = 0; q < er.t.size(); ++q) {
        const Vec2 x = lo + er.t[q] * (hi - lo);
        rt1_generators((x - pc) / h, h, gv, gd);
        const double w = len * er.w[q];
        for (int j = 0; j < 8; ++j) {
          const double nf = gv[j].dot(n);
          V(2 * i, j) += w * nf;
          V(2 * i + 1, j) += w * nf * (2.0 * er.t[q] - 1.0);
        }
      }
    }
    for (const auto& qp : tr.points) {
      const Vec2 x = qp.l0 * mesh.vertices[T.v[0]] + qp.l1 * mesh.vertices[T.v[1]] +
                     qp.l2 * mesh.vertices[T.v[2]];
      rt1_generators((x - pc) / h, h, gv, gd);
      for (int j = 0; j < 8; ++j) {
        V(6, j) += qp.w * gv[j].x();
        V(7, j) += qp.w * gv[j].y();
      }
    }

    Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(V);
    if (!lu.isInvertible())
      throw std::runtime_error("FluxSpace: degenerate cell moment matrix");
    coeff_[t] = lu.inverse();
  }
}

int FluxSpace::num_dofs() const {
  if (index_ == 0) return mesh_->num_edges();
  return 2 * mesh_->num_edges() + 2 * mesh_->num_triangles();
}

int FluxSpace::global_dof(int t, int j) const {
  if (index_ == 0) return mesh_->edge_of(t, j);
  if (j < 6) return 2 * mesh_->edge_of(t, j / 2) + (j % 2);
  return 2 * mesh_->num_edges() + 2 * t + (j - 6);
}

void FluxSpace::eval(int t, const std::array<double, 3>& lambda,
                     std::array<Vec2, kMaxDofs>& values,
                     std::array<double, kMaxDofs>& divs) const {
  const auto& T = mesh_->triangles[t];
  const Vec2 x = lambda[0] * mesh_->vertices[T.v[0]] +
                 lambda[1] * mesh_->vertices[T.v[1]] +
                 lambda[2] * mesh_->vertices[T.v[2]];
  if (index_ == 0) {
    const double area = mesh_->area(t);
    for (int k = 0; k < 3; ++k) {
      const double s = mesh_->normal_sign(t, k);
      values[k] = s * (x - mesh_->vertices[T.v[k]]) / (2.0 * area);
      divs[k] = s / area;
    }
    return;
  }
  const double h = mesh_->diameter(t);
  std::array<Vec2, 8> gv;
  std::array<double, 8> gd;
  rt1_generators((x - mesh_->barycenter(t)) / h, h, gv, gd);
  const auto& C = coeff_[t];
  for (int m = 0; m < 8; ++m) {
    Vec2 v = Vec2::Zero();
    double d = 0.0;
    for (int j = 0; j < 8; ++j) {
      v += C(j, m) * gv[j];
      d += C(j, m) * gd[j];
    }
    values[m] = v;
    divs[m] = d;
  }
}

Vec2 FluxSpace::value(int t, const std::array<double, 3>& lambda,
                      const Eigen::VectorXd& coeffs) const {
  std::array<Vec2, kMaxDofs> v;
  std::array<double, kMaxDofs> d;
  eval(t, lambda, v, d);
  Vec2 out = Vec2::Zero();
  for (int j = 0; j < dofs_per_cell(); ++j) out += coeffs[global_dof(t, j)] * v[j];
  return out;
}

double FluxSpace::divergence(int t, const std::array<double, 3>& lambda,
                             const Eigen::VectorXd& coeffs) const {
  std::array<Vec2, kMaxDofs> v;
  std::array<double, kMaxDofs> d;
  eval(t, lambda, v, d);
  double out = 0.0;
  for (int j = 0; j < dofs_per_cell(); ++j) out += coeffs[global_dof(t, j)] * d[j];
  return out;
}

}  // namespace lsfem
