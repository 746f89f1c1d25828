#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lsfem/estimate.hpp"
#include "lsfem/linsolve.hpp"

namespace lsfem {

/// Elements whose indicator reaches theta times the largest one; sorted
/// ids. Empty when every indicator vanishes.
std::vector<int> mark_maximum(const std::vector<double>& eta, double theta);

enum class StopReason { tolerance_met, max_iter_reached, all_indicators_zero };

struct LevelRecord {
  int level = 0;
  int triangles = 0;
  int dofs = 0;  // free dofs of the reduced system
  double eta = 0.0;
  std::optional<double> error_norm;  // triple norm, when an exact solution is known
  std::optional<double> eff_index;
  int marked = 0;
  double t_assembly_s = 0.0;
  double t_solve_s = 0.0;
  // populated when AdaptOptions::keep_details is set
  std::vector<double> indicators;
  std::vector<int> marked_ids;
};

struct AdaptOptions {
  int formulation = 1;
  int rt_index = 0;
  int degree = 1;
  double theta = 0.6;
  double tol = 0.5;
  int max_iter = 60;
  bool compute_error = false;      // needs ProblemSpec::exact
  bool keep_details = false;
  double delta_cap = 1.0;          // streamline-weight cap
  SolveOptions solver;
  AssemblyOptions assembly;
  EstimateOptions estimate;
  std::function<void(const LevelRecord&)> on_level;  // progress hook
};

struct RunResult {
  std::vector<LevelRecord> levels;
  StopReason stop = StopReason::max_iter_reached;
  Mesh mesh;                          // last solved mesh
  Eigen::VectorXd flux_coeffs;        // solution on it
  Eigen::VectorXd scalar_coeffs;
  ElementClassification classification;
};

/// Solve / estimate / mark / refine loop starting from the built-in
/// initial mesh. Stops when the total estimate drops to tol, after
/// max_iter refinements, or when all indicators vanish. Every refined
/// mesh is checked for conformity and a 22.5 degree angle floor.
RunResult run_adaptive(const ProblemSpec& spec, const AdaptOptions& opts);

}  // namespace lsfem
