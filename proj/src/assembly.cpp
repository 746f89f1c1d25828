#include "lsfem/assembly.hpp"

#include <cmath>
#include <stdexcept>

#include "lsfem/quadrature.hpp"

namespace lsfem {

namespace {

struct Reduction {
  std::vector<int> full_to_free;
  std::vector<int> free_to_full;
  Eigen::VectorXd pinned;
};

Reduction make_reduction(int n_full, const std::vector<Constraint>& constraints) {
  Reduction r;
  r.full_to_free.assign(n_full, 0);
  r.pinned = Eigen::VectorXd::Zero(n_full);
  for (const auto& c : constraints) {
    if (c.dof < 0 || c.dof >= n_full)
      throw std::invalid_argument("assembly: constraint dof out of range");
    r.full_to_free[c.dof] = -1;
    r.pinned[c.dof] = c.value;
  }
  for (int g = 0; g < n_full; ++g) {
    if (r.full_to_free[g] == 0) {
      r.full_to_free[g] = static_cast<int>(r.free_to_full.size());
      r.free_to_full.push_back(g);
    }
  }
  return r;
}

int default_quad_order(const FluxSpace& flux, const ScalarSpace& scalar) {
  const int m = std::max(flux.index() + 1, scalar.degree());
  return 2 * m + 2;
}

double penalty_factor(int formulation, double eps) {
  if (formulation == 2) return 1.0 / eps;
  if (formulation == 3) return 1.0;
  return 0.0;
}

void check_pair(const FluxSpace& flux, const ScalarSpace& scalar, int formulation) {
  if (&flux.mesh() != &scalar.mesh())
    throw std::invalid_argument("assembly: spaces live on different meshes");
  if (formulation < 1 || formulation > 3)
    throw std::invalid_argument("assembly: formulation must be 1, 2 or 3");
}

}  // namespace

int product_dim(const FluxSpace& flux, const ScalarSpace& scalar) {
  return flux.num_dofs() + scalar.num_dofs();
}

std::vector<Constraint> essential_constraints(const FluxSpace& flux,
                                              const ScalarSpace& scalar,
                                              int formulation, const ScalarField& g) {
  check_pair(flux, scalar, formulation);
  const std::vector<int> dofs =
      formulation == 1
          ? scalar.boundary_dofs({BoundaryTag::outflow, BoundaryTag::inflow,
                                  BoundaryTag::characteristic, BoundaryTag::unclassified})
          : scalar.boundary_dofs({BoundaryTag::inflow});
  std::vector<Constraint> out;
  out.reserve(dofs.size());
  for (int d : dofs)
    out.push_back({flux.num_dofs() + d, g ? g(scalar.dof_point(d)) : 0.0});
  return out;
}

LinearSystem assemble_system(const FluxSpace& flux, const ScalarSpace& scalar,
                             const Coefficients& co, int formulation,
                             const std::vector<Constraint>& constraints,
                             const AssemblyOptions& opts) {
  check_pair(flux, scalar, formulation);
  if (!(co.eps > 0.0)) throw std::invalid_argument("assembly: eps must be > 0");
  if (!co.beta || !co.c || !co.f)
    throw std::invalid_argument("assembly: beta, c and f are required");

  const Mesh& mesh = flux.mesh();
  const int n_flux = flux.num_dofs();
  const int n_full = n_flux + scalar.num_dofs();
  const Reduction red = make_reduction(n_full, constraints);
  const int n_free = static_cast<int>(red.free_to_full.size());
  const double sqeps = std::sqrt(co.eps);

  const int order = opts.quad_order > 0 ? opts.quad_order : default_quad_order(flux, scalar);
  const TriangleRule& rule = triangle_rule(order);
  const TriangleRule& load_rule = triangle_rule(opts.load_order);

  LinearSystem sys;
  sys.n_flux = n_flux;
  sys.n_full = n_full;
  sys.full_to_free = red.full_to_free;
  sys.free_to_full = red.free_to_full;
  sys.pinned = red.pinned;
  sys.b = Eigen::VectorXd::Zero(n_free);
  double cterm = 0.0;

  const int nfd = flux.dofs_per_cell();
  const int nsd = scalar.dofs_per_cell();
  const int nd = nfd + nsd;

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(mesh.num_triangles()) * nd * nd +
                static_cast<std::size_t>(mesh.num_edges()) * nsd * nsd);

  auto scatter = [&](const Eigen::MatrixXd& a_loc, const Eigen::VectorXd& b_loc,
                     const std::vector<int>& gdof) {
    const int n = static_cast<int>(gdof.size());
    for (int i = 0; i < n; ++i) {
      const int gi = gdof[i];
      const int fi = red.full_to_free[gi];
      if (fi >= 0) sys.b[fi] += b_loc[i];
      else cterm -= 2.0 * red.pinned[gi] * b_loc[i];
      for (int j = 0; j < n; ++j) {
        const int gj = gdof[j];
        const int fj = red.full_to_free[gj];
        if (fi >= 0 && fj >= 0) trips.emplace_back(fi, fj, a_loc(i, j));
        else if (fi >= 0) sys.b[fi] -= a_loc(i, j) * red.pinned[gj];
        else if (fj < 0) cterm += red.pinned[gi] * a_loc(i, j) * red.pinned[gj];
      }
    }
  };

  std::array<Vec2, FluxSpace::kMaxDofs> fv;
  std::array<double, FluxSpace::kMaxDofs> fd;
  std::array<double, ScalarSpace::kMaxDofs> sv;
  std::array<Vec2, ScalarSpace::kMaxDofs> sg;
  std::vector<Vec2> vec(nd);
  std::vector<double> scal(nd);
  std::vector<int> gdof(nd);
  Eigen::MatrixXd a_loc(nd, nd);
  Eigen::VectorXd b_loc(nd);

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& T = mesh.triangles[t];
    const Vec2 p0 = mesh.vertices[T.v[0]], p1 = mesh.vertices[T.v[1]],
               p2 = mesh.vertices[T.v[2]];
    const double area = mesh.area(t);

    for (int j = 0; j < nfd; ++j) gdof[j] = flux.global_dof(t, j);
    for (int j = 0; j < nsd; ++j) gdof[nfd + j] = n_flux + scalar.global_dof(t, j);
    a_loc.setZero();
    b_loc.setZero();

    for (const auto& qp : rule.points) {
      const std::array<double, 3> lambda{qp.l0, qp.l1, qp.l2};
      const Vec2 x = qp.l0 * p0 + qp.l1 * p1 + qp.l2 * p2;
      flux.eval(t, lambda, fv, fd);
      scalar.eval(t, lambda, sv, sg);
      const Vec2 b = co.beta(x);
      const double c = co.c(x);
      const double f = co.f(x);

      for (int j = 0; j < nfd; ++j) {
        vec[j] = fv[j];
        scal[j] = sqeps * fd[j];
      }
      for (int j = 0; j < nsd; ++j) {
        vec[nfd + j] = sqeps * sg[j];
        scal[nfd + j] = b.dot(sg[j]) + c * sv[j];
      }

      const double w = area * qp.w;
      for (int i = 0; i < nd; ++i) {
        b_loc[i] += w * f * scal[i];
        for (int j = 0; j < nd; ++j)
          a_loc(i, j) += w * (vec[i].dot(vec[j]) + scal[i] * scal[j]);
      }
    }
    scatter(a_loc, b_loc, gdof);

    for (const auto& qp : load_rule.points) {
      const Vec2 x = qp.l0 * p0 + qp.l1 * p1 + qp.l2 * p2;
      const double f = co.f(x);
      cterm += area * qp.w * f * f;
    }
  }

  const double pfac = penalty_factor(formulation, co.eps);
  if (pfac > 0.0) {
    const EdgeRule& er = edge_rule(opts.edge_points);
    Eigen::MatrixXd ap(nsd, nsd);
    Eigen::VectorXd bp = Eigen::VectorXd::Zero(nsd);
    std::vector<int> gsd(nsd);
    for (int e = 0; e < mesh.num_edges(); ++e) {
      if (mesh.edges[e].tag != BoundaryTag::outflow) continue;
      const int t = mesh.edges[e].tri[0];
      int li = -1;
      for (int i = 0; i < 3; ++i)
        if (mesh.edge_of(t, i) == e) li = i;
      ap.setZero();
      for (std::size_t q = 0; q < er.t.size(); ++q) {
        const auto lambda = mesh.edge_barycentric(t, li, er.t[q]);
        scalar.eval(t, lambda, sv, sg);
        // weight h_e^-1 cancels the edge length of the line integral
        const double w = pfac * er.w[q];
        for (int i = 0; i < nsd; ++i)
          for (int j = 0; j < nsd; ++j) ap(i, j) += w * sv[i] * sv[j];
      }
      for (int j = 0; j < nsd; ++j) gsd[j] = n_flux + scalar.global_dof(t, j);
      scatter(ap, bp, gsd);
    }
  }

  sys.A.resize(n_free, n_free);
  sys.A.setFromTriplets(trips.begin(), trips.end());
  sys.constant_term = cterm;
  return sys;
}

Eigen::SparseMatrix<double> assemble_norm_matrix(const FluxSpace& flux,
                                                 const ScalarSpace& scalar, double eps,
                                                 int formulation,
                                                 const std::vector<Constraint>& constraints,
                                                 const AssemblyOptions& opts) {
  check_pair(flux, scalar, formulation);
  if (!(eps > 0.0)) throw std::invalid_argument("assembly: eps must be > 0");

  const Mesh& mesh = flux.mesh();
  const int n_flux = flux.num_dofs();
  const int n_full = n_flux + scalar.num_dofs();
  const Reduction red = make_reduction(n_full, constraints);
  const int n_free = static_cast<int>(red.free_to_full.size());

  const int order = opts.quad_order > 0 ? opts.quad_order : default_quad_order(flux, scalar);
  const TriangleRule& rule = triangle_rule(order);

  const int nfd = flux.dofs_per_cell();
  const int nsd = scalar.dofs_per_cell();

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(mesh.num_triangles()) * (nfd * nfd + nsd * nsd));

  auto scatter_free = [&](double a, int gi, int gj) {
    const int fi = red.full_to_free[gi], fj = red.full_to_free[gj];
    if (fi >= 0 && fj >= 0) trips.emplace_back(fi, fj, a);
  };

  std::array<Vec2, FluxSpace::kMaxDofs> fv;
  std::array<double, FluxSpace::kMaxDofs> fd;
  std::array<double, ScalarSpace::kMaxDofs> sv;
  std::array<Vec2, ScalarSpace::kMaxDofs> sg;
  Eigen::MatrixXd aff(nfd, nfd), ass(nsd, nsd);

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double area = mesh.area(t);
    aff.setZero();
    ass.setZero();
    for (const auto& qp : rule.points) {
      const std::array<double, 3> lambda{qp.l0, qp.l1, qp.l2};
      flux.eval(t, lambda, fv, fd);
      scalar.eval(t, lambda, sv, sg);
      const double w = area * qp.w;
      for (int i = 0; i < nfd; ++i)
        for (int j = 0; j < nfd; ++j) aff(i, j) += w * fv[i].dot(fv[j]);
      for (int i = 0; i < nsd; ++i)
        for (int j = 0; j < nsd; ++j)
          ass(i, j) += w * (sv[i] * sv[j] + eps * sg[i].dot(sg[j]));
    }
    for (int i = 0; i < nfd; ++i)
      for (int j = 0; j < nfd; ++j)
        scatter_free(aff(i, j), flux.global_dof(t, i), flux.global_dof(t, j));
    for (int i = 0; i < nsd; ++i)
      for (int j = 0; j < nsd; ++j)
        scatter_free(ass(i, j), n_flux + scalar.global_dof(t, i),
                     n_flux + scalar.global_dof(t, j));
  }

  const double pfac = penalty_factor(formulation, eps);
  if (pfac > 0.0) {
    const EdgeRule& er = edge_rule(opts.edge_points);
    Eigen::MatrixXd ap(nsd, nsd);
    for (int e = 0; e < mesh.num_edges(); ++e) {
      if (mesh.edges[e].tag != BoundaryTag::outflow) continue;
      const int t = mesh.edges[e].tri[0];
      int li = -1;
      for (int i = 0; i < 3; ++i)
        if (mesh.edge_of(t, i) == e) li = i;
      ap.setZero();
      for (std::size_t q = 0; q < er.t.size(); ++q) {
        const auto lambda = mesh.edge_barycentric(t, li, er.t[q]);
        scalar.eval(t, lambda, sv, sg);
        const double w = pfac * er.w[q];
        for (int i = 0; i < nsd; ++i)
          for (int j = 0; j < nsd; ++j) ap(i, j) += w * sv[i] * sv[j];
      }
      for (int i = 0; i < nsd; ++i)
        for (int j = 0; j < nsd; ++j)
          scatter_free(ap(i, j), n_flux + scalar.global_dof(t, i),
                       n_flux + scalar.global_dof(t, j));
    }
  }

  Eigen::SparseMatrix<double> M(n_free, n_free);
  M.setFromTriplets(trips.begin(), trips.end());
  return M;
}

Eigen::VectorXd expand(const LinearSystem& sys, const Eigen::VectorXd& reduced) {
  if (reduced.size() != static_cast<Eigen::Index>(sys.free_to_full.size()))
    throw std::invalid_argument("expand: reduced vector has wrong size");
  Eigen::VectorXd full = sys.pinned;
  for (std::size_t k = 0; k < sys.free_to_full.size(); ++k)
    full[sys.free_to_full[k]] = reduced[static_cast<Eigen::Index>(k)];
  return full;
}

ProductView split(const LinearSystem& sys, const Eigen::VectorXd& full) {
  if (full.size() != sys.n_full)
    throw std::invalid_argument("split: full vector has wrong size");
  ProductView v;
  v.flux = full.head(sys.n_flux);
  v.scalar = full.tail(sys.n_full - sys.n_flux);
  return v;
}

}  // namespace lsfem
