#include "lsfem/adapt.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace lsfem {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Conformity and shape guarantees that every refined mesh must satisfy:
/// no hanging edges (every single-sided edge lies on the domain boundary)
/// and a 22.5 degree minimum angle.
void verify_refined(const Mesh& mesh) {
  constexpr double tol = 1e-12;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.is_boundary_edge(e)) continue;
    const Vec2 m = mesh.edge_midpoint(e);
    const bool on_box = std::abs(m.x()) < tol || std::abs(m.x() - 1.0) < tol ||
                        std::abs(m.y()) < tol || std::abs(m.y() - 1.0) < tol;
    if (!on_box) throw std::logic_error("refine produced a hanging edge");
  }
  const double floor = M_PI / 8.0 - 1e-12;  // 22.5 degrees
  if (mesh.min_angle() < floor)
    throw std::logic_error("refine dropped below the 22.5 degree angle floor");
}

}  // namespace

std::vector<int> mark_maximum(const std::vector<double>& eta, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("mark_maximum: theta must be in [0,1]");
  double emax = 0.0;
  for (double e : eta) emax = std::max(emax, e);
  std::vector<int> out;
  if (emax == 0.0) return out;
  const double cut = theta * emax;
  for (std::size_t k = 0; k < eta.size(); ++k)
    if (eta[k] >= cut) out.push_back(static_cast<int>(k));
  return out;
}

RunResult run_adaptive(const ProblemSpec& spec, const AdaptOptions& opts) {
  if (opts.max_iter < 0) throw std::invalid_argument("run_adaptive: max_iter < 0");
  if (opts.compute_error && !spec.exact)
    throw std::invalid_argument("run_adaptive: error requested without exact solution");

  Coefficients co;
  co.eps = spec.eps;
  co.beta = spec.beta;
  co.c = spec.c;
  co.f = spec.f;

  RunResult result;
  Mesh mesh = build_initial_mesh();

  for (int level = 0;; ++level) {
    classify_boundary(mesh, spec.beta);
    const FluxSpace flux(mesh, opts.rt_index);
    const ScalarSpace scalar(mesh, opts.degree);
    const auto constraints =
        essential_constraints(flux, scalar, opts.formulation, spec.g);

    auto t0 = std::chrono::steady_clock::now();
    const LinearSystem sys = assemble_system(flux, scalar, co, opts.formulation,
                                             constraints, opts.assembly);
    const double t_assembly = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const SolveReport sol = solve_spd(sys.A, sys.b, opts.solver);
    const double t_solve = seconds_since(t0);

    const ProductView view = split(sys, expand(sys, sol.x));
    const std::vector<double> eta_k =
        local_indicators(flux, scalar, co, opts.formulation, view.flux, view.scalar,
                         opts.estimate);
    const double eta = total_estimate(eta_k);
    const ElementClassification cls =
        classify_elements(mesh, spec.beta, spec.eps, opts.delta_cap);

    LevelRecord rec;
    rec.level = level;
    rec.triangles = mesh.num_triangles();
    rec.dofs = static_cast<int>(sys.A.rows());
    rec.eta = eta;
    rec.t_assembly_s = t_assembly;
    rec.t_solve_s = t_solve;

    if (opts.compute_error) {
      const ErrorReport err = exact_error(flux, scalar, spec, opts.formulation,
                                          view.flux, view.scalar, cls.delta,
                                          opts.estimate);
      rec.error_norm = err.triple_norm;
      if (err.triple_norm > 1e-14) rec.eff_index = eta / err.triple_norm;
    }

    const std::vector<int> marked = mark_maximum(eta_k, opts.theta);
    rec.marked = static_cast<int>(marked.size());
    if (opts.keep_details) {
      rec.indicators = eta_k;
      rec.marked_ids = marked;
    }
    result.levels.push_back(std::move(rec));
    if (opts.on_level) opts.on_level(result.levels.back());

    const bool done_tol = eta <= opts.tol;
    const bool done_iter = level >= opts.max_iter;
    const bool done_zero = marked.empty();
    if (done_tol || done_iter || done_zero) {
      result.stop = done_tol ? StopReason::tolerance_met
                  : done_zero ? StopReason::all_indicators_zero
                              : StopReason::max_iter_reached;
      result.mesh = std::move(mesh);
      result.flux_coeffs = view.flux;
      result.scalar_coeffs = view.scalar;
      result.classification = cls;
      return result;
    }

    mesh = refine(mesh, marked);
    verify_refined(mesh);
  }
}

}  // namespace lsfem
