#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lsfem/quadrature.hpp"
#include "lsfem/spaces.hpp"

using namespace lsfem;

namespace {

std::array<double, 3> random_barycentric(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  double a = u(rng), b = u(rng) * (1.0 - a);
  return {1.0 - a - b, a, b};
}

Vec2 map_point(const Mesh& m, int t, const std::array<double, 3>& l) {
  const auto& T = m.triangles[t];
  return l[0] * m.vertices[T.v[0]] + l[1] * m.vertices[T.v[1]] +
         l[2] * m.vertices[T.v[2]];
}

/// Two-moment edge dofs plus cell averages of an analytic field, matching
/// the flux space's dof functionals; computed with independent quadrature.
Eigen::VectorXd flux_interpolate(const FluxSpace& sp, const VectorField& F) {
  const Mesh& m = sp.mesh();
  Eigen::VectorXd dofs = Eigen::VectorXd::Zero(sp.num_dofs());
  const EdgeRule& er = edge_rule(6);
  for (int e = 0; e < m.num_edges(); ++e) {
    const Vec2 lo = m.vertices[m.edges[e].v[0]], hi = m.vertices[m.edges[e].v[1]];
    const Vec2 n = m.edge_normal(e);
    const double len = m.edge_length(e);
    double m0 = 0.0, m1 = 0.0;
    for (std::size_t q = 0; q < er.t.size(); ++q) {
      const double fn = F(lo + er.t[q] * (hi - lo)).dot(n);
      m0 += len * er.w[q] * fn;
      m1 += len * er.w[q] * fn * (2.0 * er.t[q] - 1.0);
    }
    if (sp.index() == 0) {
      dofs[e] = m0;
    } else {
      dofs[2 * e] = m0;
      dofs[2 * e + 1] = m1;
    }
  }
  if (sp.index() == 1) {
    const TriangleRule& tr = triangle_rule(6);
    for (int t = 0; t < m.num_triangles(); ++t) {
      Vec2 avg = Vec2::Zero();
      for (const auto& qp : tr.points)
        avg += qp.w * F(map_point(m, t, {qp.l0, qp.l1, qp.l2}));
      dofs[2 * m.num_edges() + 2 * t] = avg.x();
      dofs[2 * m.num_edges() + 2 * t + 1] = avg.y();
    }
  }
  return dofs;
}

}  // namespace

TEST_CASE("scalar space dimensions and dof layout") {
  const Mesh m = build_initial_mesh();
  CHECK(ScalarSpace(m, 1).num_dofs() == 13);
  CHECK(ScalarSpace(m, 2).num_dofs() == 41);  // 13 vertices + 28 edges
  CHECK_THROWS(ScalarSpace(m, 3));

  const ScalarSpace p2(m, 2);
  for (int t = 0; t < m.num_triangles(); ++t) {
    for (int j = 0; j < 3; ++j) CHECK(p2.global_dof(t, j) == m.triangles[t].v[j]);
    for (int j = 0; j < 3; ++j) CHECK(p2.global_dof(t, 3 + j) == 13 + m.edge_of(t, j));
  }
}

TEST_CASE("Lagrange bases: delta property, partition of unity") {
  const Mesh m = uniform_refine(build_initial_mesh());
  std::mt19937 rng(3);
  for (int degree : {1, 2}) {
    const ScalarSpace sp(m, degree);
    const int nd = sp.dofs_per_cell();
    std::array<double, ScalarSpace::kMaxDofs> val;
    std::array<Vec2, ScalarSpace::kMaxDofs> grad;

    // delta property at the local dof points
    const std::array<std::array<double, 3>, 6> nodes = {{{1, 0, 0},
                                                         {0, 1, 0},
                                                         {0, 0, 1},
                                                         {0, 0.5, 0.5},
                                                         {0.5, 0, 0.5},
                                                         {0.5, 0.5, 0}}};
    for (int t : {0, 7, 20}) {
      for (int i = 0; i < nd; ++i) {
        sp.eval(t, nodes[i], val, grad);
        for (int j = 0; j < nd; ++j)
          CHECK(val[j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
      }
      // partition of unity at random interior points
      for (int rep = 0; rep < 5; ++rep) {
        const auto l = random_barycentric(rng);
        sp.eval(t, l, val, grad);
        double s = 0.0;
        Vec2 gs = Vec2::Zero();
        for (int j = 0; j < nd; ++j) {
          s += val[j];
          gs += grad[j];
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(gs.norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("hat function integrals match closed forms") {
  const Mesh m = build_initial_mesh();
  const ScalarSpace sp(m, 1);
  const TriangleRule& rule = triangle_rule(4);
  std::array<double, ScalarSpace::kMaxDofs> val;
  std::array<Vec2, ScalarSpace::kMaxDofs> grad;
  for (int t : {0, 5, 15}) {
    const double area = m.area(t);
    Eigen::Matrix3d mass = Eigen::Matrix3d::Zero();
    Eigen::Vector3d stiff = Eigen::Vector3d::Zero();
    for (const auto& qp : rule.points) {
      sp.eval(t, {qp.l0, qp.l1, qp.l2}, val, grad);
      for (int i = 0; i < 3; ++i) {
        stiff[i] += area * qp.w * grad[i].squaredNorm();
        for (int j = 0; j < 3; ++j) mass(i, j) += area * qp.w * val[i] * val[j];
      }
    }
    for (int i = 0; i < 3; ++i) {
      CHECK(mass(i, i) == doctest::Approx(area / 6.0).epsilon(1e-13));
      CHECK(mass(i, (i + 1) % 3) == doctest::Approx(area / 12.0).epsilon(1e-13));
      // |grad l_i| = len(opposite edge) / (2 area)
      const double len = m.edge_length(m.edge_of(t, i));
      CHECK(stiff[i] == doctest::Approx(len * len / (4.0 * area)).epsilon(1e-13));
    }
  }
}

TEST_CASE("P2 reproduces quadratics exactly") {
  const Mesh m = uniform_refine(build_initial_mesh());
  const ScalarSpace sp(m, 2);
  auto u = [](const Vec2& x) { return x.x() * x.x() + 3.0 * x.x() * x.y() - x.y(); };
  auto gu = [](const Vec2& x) { return Vec2(2.0 * x.x() + 3.0 * x.y(), 3.0 * x.x() - 1.0); };
  Eigen::VectorXd coeffs(sp.num_dofs());
  for (int g = 0; g < sp.num_dofs(); ++g) coeffs[g] = u(sp.dof_point(g));

  std::mt19937 rng(11);
  for (int t = 0; t < m.num_triangles(); t += 5) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto l = random_barycentric(rng);
      const Vec2 x = map_point(m, t, l);
      CHECK(sp.value(t, l, coeffs) == doctest::Approx(u(x)).epsilon(1e-12));
      CHECK((sp.gradient(t, l, coeffs) - gu(x)).norm() < 1e-11);
    }
  }
}

TEST_CASE("scalar fields are continuous across interior edges") {
  Mesh m = uniform_refine(build_initial_mesh());
  std::mt19937 rng(5);
  std::normal_distribution<double> gauss;
  for (int degree : {1, 2}) {
    const ScalarSpace sp(m, degree);
    Eigen::VectorXd coeffs(sp.num_dofs());
    for (int g = 0; g < sp.num_dofs(); ++g) coeffs[g] = gauss(rng);
    for (int e = 0; e < m.num_edges(); ++e) {
      if (m.is_boundary_edge(e)) continue;
      for (double s : {0.2, 0.9}) {
        double v[2];
        for (int side = 0; side < 2; ++side) {
          const int t = m.edges[e].tri[side];
          int li = -1;
          for (int i = 0; i < 3; ++i)
            if (m.edge_of(t, i) == e) li = i;
          v[side] = sp.value(t, m.edge_barycentric(t, li, s), coeffs);
        }
        CHECK(v[0] == doctest::Approx(v[1]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("boundary dof collection covers tag closures") {
  Mesh m = build_initial_mesh();
  classify_boundary(m, [](const Vec2&) { return Vec2(1.0, 1.0); });

  const ScalarSpace p1(m, 1);
  const ScalarSpace p2(m, 2);
  const auto whole1 = p1.boundary_dofs({BoundaryTag::outflow, BoundaryTag::inflow,
                                        BoundaryTag::characteristic,
                                        BoundaryTag::unclassified});
  CHECK(whole1.size() == 8);  // boundary vertices
  const auto whole2 = p2.boundary_dofs({BoundaryTag::outflow, BoundaryTag::inflow,
                                        BoundaryTag::characteristic,
                                        BoundaryTag::unclassified});
  CHECK(whole2.size() == 16);  // + 8 boundary edges

  // inflow closure for (1,1): bottom and left sides
  const auto in1 = p1.boundary_dofs({BoundaryTag::inflow});
  CHECK(in1.size() == 5);  // (0,0),(1/2,0),(1,0),(0,1/2),(0,1)
  for (int g : in1) {
    const Vec2 p = p1.dof_point(g);
    CHECK((p.x() < 1e-12 || p.y() < 1e-12));
  }
  const auto in2 = p2.boundary_dofs({BoundaryTag::inflow});
  CHECK(in2.size() == 9);
}

TEST_CASE("flux space dimensions and shared dof ids") {
  const Mesh m = build_initial_mesh();
  CHECK(FluxSpace(m, 0).num_dofs() == 28);
  CHECK(FluxSpace(m, 1).num_dofs() == 88);  // 2*28 + 2*16
  CHECK_THROWS(FluxSpace(m, 2));

  for (int index : {0, 1}) {
    const FluxSpace sp(m, index);
    for (int e = 0; e < m.num_edges(); ++e) {
      if (m.is_boundary_edge(e)) continue;
      const int t0 = m.edges[e].tri[0], t1 = m.edges[e].tri[1];
      int l0 = -1, l1 = -1;
      for (int i = 0; i < 3; ++i) {
        if (m.edge_of(t0, i) == e) l0 = i;
        if (m.edge_of(t1, i) == e) l1 = i;
      }
      if (index == 0) {
        CHECK(sp.global_dof(t0, l0) == sp.global_dof(t1, l1));
      } else {
        CHECK(sp.global_dof(t0, 2 * l0) == sp.global_dof(t1, 2 * l1));
        CHECK(sp.global_dof(t0, 2 * l0 + 1) == sp.global_dof(t1, 2 * l1 + 1));
      }
    }
  }
}

TEST_CASE("flux bases are dual to their dof functionals") {
  const Mesh m = uniform_refine(build_initial_mesh());
  const EdgeRule& er = edge_rule(4);
  const TriangleRule& tr = triangle_rule(4);
  for (int index : {0, 1}) {
    const FluxSpace sp(m, index);
    const int nd = sp.dofs_per_cell();
    std::array<Vec2, FluxSpace::kMaxDofs> val;
    std::array<double, FluxSpace::kMaxDofs> div;
    for (int t : {0, 9, 31}) {
      Eigen::MatrixXd dofs = Eigen::MatrixXd::Zero(nd, nd);
      for (int i = 0; i < 3; ++i) {
        const int e = m.edge_of(t, i);
        const Vec2 n = m.edge_normal(e);
        const double len = m.edge_length(e);
        for (std::size_t q = 0; q < er.t.size(); ++q) {
          sp.eval(t, m.edge_barycentric(t, i, er.t[q]), val, div);
          for (int j = 0; j < nd; ++j) {
            const double fn = val[j].dot(n);
            if (index == 0) {
              dofs(i, j) += len * er.w[q] * fn;
            } else {
              dofs(2 * i, j) += len * er.w[q] * fn;
              dofs(2 * i + 1, j) += len * er.w[q] * fn * (2.0 * er.t[q] - 1.0);
            }
          }
        }
      }
      if (index == 1) {
        for (const auto& qp : tr.points) {
          sp.eval(t, {qp.l0, qp.l1, qp.l2}, val, div);
          for (int j = 0; j < nd; ++j) {
            dofs(6, j) += qp.w * val[j].x();
            dofs(7, j) += qp.w * val[j].y();
          }
        }
      }
      for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j)
          CHECK_MESSAGE(dofs(i, j) == doctest::Approx(i == j ? 1.0 : 0.0)
                                          .epsilon(1e-11)
                                          .scale(1.0),
                        "index ", index, " cell ", t, " dof ", i, " basis ", j);
    }
  }
}

TEST_CASE("divergence theorem holds per cell") {
  const Mesh m = uniform_refine(build_initial_mesh());
  const EdgeRule& er = edge_rule(4);
  const TriangleRule& tr = triangle_rule(4);
  for (int index : {0, 1}) {
    const FluxSpace sp(m, index);
    const int nd = sp.dofs_per_cell();
    std::array<Vec2, FluxSpace::kMaxDofs> val;
    std::array<double, FluxSpace::kMaxDofs> div;
    for (int t : {2, 17}) {
      Eigen::VectorXd vol = Eigen::VectorXd::Zero(nd);
      Eigen::VectorXd srf = Eigen::VectorXd::Zero(nd);
      const double area = m.area(t);
      for (const auto& qp : tr.points) {
        sp.eval(t, {qp.l0, qp.l1, qp.l2}, val, div);
        for (int j = 0; j < nd; ++j) vol[j] += area * qp.w * div[j];
      }
      for (int i = 0; i < 3; ++i) {
        const int e = m.edge_of(t, i);
        const double len = m.edge_length(e);
        const Vec2 n_out = m.normal_sign(t, i) * m.edge_normal(e);
        for (std::size_t q = 0; q < er.t.size(); ++q) {
          sp.eval(t, m.edge_barycentric(t, i, er.t[q]), val, div);
          for (int j = 0; j < nd; ++j) srf[j] += len * er.w[q] * val[j].dot(n_out);
        }
      }
      for (int j = 0; j < nd; ++j)
        CHECK(vol[j] == doctest::Approx(srf[j]).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("flux interpolation reproduces fields inside the space") {
  const Mesh m = uniform_refine(build_initial_mesh());
  std::mt19937 rng(17);

  SUBCASE("lowest index: a + c x") {
    const FluxSpace sp(m, 0);
    const VectorField F = [](const Vec2& x) {
      return Vec2(0.7 + 1.3 * x.x(), -0.4 + 1.3 * x.y());
    };
    const Eigen::VectorXd dofs = flux_interpolate(sp, F);
    for (int t = 0; t < m.num_triangles(); t += 7) {
      const auto l = random_barycentric(rng);
      const Vec2 x = map_point(m, t, l);
      CHECK((sp.value(t, l, dofs) - F(x)).norm() < 1e-11);
      CHECK(sp.divergence(t, l, dofs) == doctest::Approx(2.6).epsilon(1e-11));
    }
  }
  SUBCASE("index 1: full linear fields") {
    const FluxSpace sp(m, 1);
    const VectorField F = [](const Vec2& x) {
      return Vec2(1.0 + 2.0 * x.x() - x.y(), 3.0 - x.x() + 4.0 * x.y());
    };
    const Eigen::VectorXd dofs = flux_interpolate(sp, F);
    for (int t = 0; t < m.num_triangles(); t += 5) {
      const auto l = random_barycentric(rng);
      const Vec2 x = map_point(m, t, l);
      CHECK((sp.value(t, l, dofs) - F(x)).norm() < 1e-10);
      CHECK(sp.divergence(t, l, dofs) == doctest::Approx(6.0).epsilon(1e-10));
    }
  }
  SUBCASE("index 1: quadratic part x (x . d)") {
    const FluxSpace sp(m, 1);
    const VectorField F = [](const Vec2& x) {
      const double s = 2.0 * x.x() - 0.5 * x.y();
      return Vec2(x.x() * s, x.y() * s);
    };
    const Eigen::VectorXd dofs = flux_interpolate(sp, F);
    for (int t = 0; t < m.num_triangles(); t += 6) {
      const auto l = random_barycentric(rng);
      const Vec2 x = map_point(m, t, l);
      CHECK((sp.value(t, l, dofs) - F(x)).norm() < 1e-10);
      // div = 3 (2x - y/2)
      const double expect = 3.0 * (2.0 * x.x() - 0.5 * x.y());
      CHECK(sp.divergence(t, l, dofs) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("normal component is continuous across interior edges") {
  const Mesh m = uniform_refine(uniform_refine(build_initial_mesh()));
  std::mt19937 rng(23);
  std::normal_distribution<double> gauss;
  for (int index : {0, 1}) {
    const FluxSpace sp(m, index);
    Eigen::VectorXd coeffs(sp.num_dofs());
    for (int g = 0; g < sp.num_dofs(); ++g) coeffs[g] = gauss(rng);
    int checked = 0;
    for (int e = 0; e < m.num_edges(); ++e) {
      if (m.is_boundary_edge(e)) continue;
      const Vec2 n = m.edge_normal(e);
      for (double s : {0.15, 0.5, 0.85}) {
        double fn[2];
        for (int side = 0; side < 2; ++side) {
          const int t = m.edges[e].tri[side];
          int li = -1;
          for (int i = 0; i < 3; ++i)
            if (m.edge_of(t, i) == e) li = i;
          fn[side] = sp.value(t, m.edge_barycentric(t, li, s), coeffs).dot(n);
        }
        CHECK(fn[0] == doctest::Approx(fn[1]).epsilon(1e-10).scale(1.0));
        ++checked;
      }
    }
    CHECK(checked > 100);
  }
}
