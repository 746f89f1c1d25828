#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lsfem/assembly.hpp"
#include "lsfem/problems.hpp"

namespace lsfem {

struct EstimateOptions {
  int quad_order = 10;  // indicators and error norms
  int edge_points = 4;
};

/// Local least-squares indicators eta_K (not squared): the element's
/// share of the functional, with each outflow-edge penalty charged to its
/// adjacent element. Formulation 1 has no edge terms.
std::vector<double> local_indicators(const FluxSpace& flux, const ScalarSpace& scalar,
                                     const Coefficients& co, int formulation,
                                     const Eigen::VectorXd& flux_coeffs,
                                     const Eigen::VectorXd& scalar_coeffs,
                                     const EstimateOptions& opts = {});

/// sqrt of the sum of squared indicators.
double total_estimate(const std::vector<double>& eta);

/// Error of a discrete pair against the exact solution, in the norms that
/// pair with the formulation.
struct ErrorReport {
  /// Value of the homogeneous functional at the error; equals the squared
  /// total estimate up to quadrature.
  double functional_error = 0.0;
  double m_norm = 0.0;       // flux L2 + scalar L2 + weighted H1 (+ penalties)
  double triple_norm = 0.0;  // m_norm plus the streamline term
  double l2_u = 0.0;
  double l2_flux = 0.0;
};

/// Requires spec.exact; delta holds the per-element streamline weights.
ErrorReport exact_error(const FluxSpace& flux, const ScalarSpace& scalar,
                        const ProblemSpec& spec, int formulation,
                        const Eigen::VectorXd& flux_coeffs,
                        const Eigen::VectorXd& scalar_coeffs,
                        const std::vector<double>& delta,
                        const EstimateOptions& opts = {});

}  // namespace lsfem
