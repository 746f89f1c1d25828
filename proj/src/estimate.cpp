#include "lsfem/estimate.hpp"

#include <cmath>
#include <stdexcept>

#include "lsfem/quadrature.hpp"

namespace lsfem {

namespace {

double outflow_penalty_factor(int formulation, double eps) {
  if (formulation == 2) return 1.0 / eps;
  if (formulation == 3) return 1.0;
  return 0.0;
}

void check_inputs(const FluxSpace& flux, const ScalarSpace& scalar, int formulation,
                  const Eigen::VectorXd& fc, const Eigen::VectorXd& sc) {
  if (&flux.mesh() != &scalar.mesh())
    throw std::invalid_argument("estimate: spaces live on different meshes");
  if (formulation < 1 || formulation > 3)
    throw std::invalid_argument("estimate: formulation must be 1, 2 or 3");
  if (fc.size() != flux.num_dofs() || sc.size() != scalar.num_dofs())
    throw std::invalid_argument("estimate: coefficient vector size mismatch");
}

}  // namespace

std::vector<double> local_indicators(const FluxSpace& flux, const ScalarSpace& scalar,
                                     const Coefficients& co, int formulation,
                                     const Eigen::VectorXd& flux_coeffs,
                                     const Eigen::VectorXd& scalar_coeffs,
                                     const EstimateOptions& opts) {
  check_inputs(flux, scalar, formulation, flux_coeffs, scalar_coeffs);
  const Mesh& mesh = flux.mesh();
  const TriangleRule& rule = triangle_rule(opts.quad_order);
  const double sqeps = std::sqrt(co.eps);

  std::vector<double> eta2(mesh.num_triangles(), 0.0);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& T = mesh.triangles[t];
    const Vec2 p0 = mesh.vertices[T.v[0]], p1 = mesh.vertices[T.v[1]],
               p2 = mesh.vertices[T.v[2]];
    const double area = mesh.area(t);
    double acc = 0.0;
    for (const auto& qp : rule.points) {
      const std::array<double, 3> lambda{qp.l0, qp.l1, qp.l2};
      const Vec2 x = qp.l0 * p0 + qp.l1 * p1 + qp.l2 * p2;
      const Vec2 sig = flux.value(t, lambda, flux_coeffs);
      const double dsig = flux.divergence(t, lambda, flux_coeffs);
      const double u = scalar.value(t, lambda, scalar_coeffs);
      const Vec2 gu = scalar.gradient(t, lambda, scalar_coeffs);
      const Vec2 r1 = sig + sqeps * gu;
      const double r2 =
          sqeps * dsig + co.beta(x).dot(gu) + co.c(x) * u - co.f(x);
      acc += area * qp.w * (r1.squaredNorm() + r2 * r2);
    }
    eta2[t] = acc;
  }

  const double pfac = outflow_penalty_factor(formulation, co.eps);
  if (pfac > 0.0) {
    const EdgeRule& er = edge_rule(opts.edge_points);
    for (int e = 0; e < mesh.num_edges(); ++e) {
      if (mesh.edges[e].tag != BoundaryTag::outflow) continue;
      const int t = mesh.edges[e].tri[0];
      int li = -1;
      for (int i = 0; i < 3; ++i)
        if (mesh.edge_of(t, i) == e) li = i;
      double acc = 0.0;
      for (std::size_t q = 0; q < er.t.size(); ++q) {
        const double u = scalar.value(t, mesh.edge_barycentric(t, li, er.t[q]),
                                      scalar_coeffs);
        acc += er.w[q] * u * u;  // h_e^-1 cancels the edge length
      }
      eta2[t] += pfac * acc;
    }
  }

  std::vector<double> eta(eta2.size());
  for (std::size_t k = 0; k < eta2.size(); ++k) eta[k] = std::sqrt(eta2[k]);
  return eta;
}

double total_estimate(const std::vector<double>& eta) {
  double s = 0.0;
  for (double e : eta) s += e * e;
  return std::sqrt(s);
}

ErrorReport exact_error(const FluxSpace& flux, const ScalarSpace& scalar,
                        const ProblemSpec& spec, int formulation,
                        const Eigen::VectorXd& flux_coeffs,
                        const Eigen::VectorXd& scalar_coeffs,
                        const std::vector<double>& delta,
                        const EstimateOptions& opts) {
  check_inputs(flux, scalar, formulation, flux_coeffs, scalar_coeffs);
  if (!spec.exact) throw std::invalid_argument("exact_error: no exact solution");
  const Mesh& mesh = flux.mesh();
  if (delta.size() != static_cast<std::size_t>(mesh.num_triangles()))
    throw std::invalid_argument("exact_error: delta size mismatch");
  const ExactSolution& ex = *spec.exact;
  const TriangleRule& rule = triangle_rule(opts.quad_order);
  const double sqeps = std::sqrt(spec.eps);

  double functional = 0.0, m2 = 0.0, stream = 0.0, l2u = 0.0, l2f = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& T = mesh.triangles[t];
    const Vec2 p0 = mesh.vertices[T.v[0]], p1 = mesh.vertices[T.v[1]],
               p2 = mesh.vertices[T.v[2]];
    const double area = mesh.area(t);
    double acc_f = 0.0, acc_m = 0.0, acc_s = 0.0, acc_u = 0.0, acc_sig = 0.0;
    for (const auto& qp : rule.points) {
      const std::array<double, 3> lambda{qp.l0, qp.l1, qp.l2};
      const Vec2 x = qp.l0 * p0 + qp.l1 * p1 + qp.l2 * p2;
      const Vec2 E = ex.sigma(x) - flux.value(t, lambda, flux_coeffs);
      const double dE = ex.div_sigma(x) - flux.divergence(t, lambda, flux_coeffs);
      const double e = ex.u(x) - scalar.value(t, lambda, scalar_coeffs);
      const Vec2 ge = ex.grad_u(x) - scalar.gradient(t, lambda, scalar_coeffs);
      const double w = area * qp.w;

      const Vec2 r1 = E + sqeps * ge;
      const double r2 = sqeps * dE + spec.beta(x).dot(ge) + spec.c(x) * e;
      acc_f += w * (r1.squaredNorm() + r2 * r2);
      acc_m += w * (E.squaredNorm() + e * e + spec.eps * ge.squaredNorm());
      const double bg = spec.beta(x).dot(ge);
      acc_s += w * bg * bg;
      acc_u += w * e * e;
      acc_sig += w * E.squaredNorm();
    }
    functional += acc_f;
    m2 += acc_m;
    stream += delta[t] * acc_s;
    l2u += acc_u;
    l2f += acc_sig;
  }

  const double pfac = outflow_penalty_factor(formulation, spec.eps);
  if (pfac > 0.0) {
    const EdgeRule& er = edge_rule(opts.edge_points);
    for (int e = 0; e < mesh.num_edges(); ++e) {
      if (mesh.edges[e].tag != BoundaryTag::outflow) continue;
      const int t = mesh.edges[e].tri[0];
      int li = -1;
      for (int i = 0; i < 3; ++i)
        if (mesh.edge_of(t, i) == e) li = i;
      const Vec2 lo = mesh.vertices[mesh.edges[e].v[0]];
      const Vec2 hi = mesh.vertices[mesh.edges[e].v[1]];
      double acc = 0.0;
      for (std::size_t q = 0; q < er.t.size(); ++q) {
        const Vec2 x = lo + er.t[q] * (hi - lo);
        const double err = ex.u(x) - scalar.value(t, mesh.edge_barycentric(t, li, er.t[q]),
                                                  scalar_coeffs);
        acc += er.w[q] * err * err;
      }
      functional += pfac * acc;
      m2 += pfac * acc;
    }
  }

  ErrorReport rep;
  rep.functional_error = functional;
  rep.m_norm = std::sqrt(m2);
  rep.triple_norm = std::sqrt(m2 + stream);
  rep.l2_u = std::sqrt(l2u);
  rep.l2_flux = std::sqrt(l2f);
  return rep;
}

}  // namespace lsfem
