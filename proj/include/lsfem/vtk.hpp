#pragma once

#include <string>
#include <vector>

#include "lsfem/spaces.hpp"

namespace lsfem {

/// Writes mesh and solution as a legacy ASCII unstructured grid: point
/// scalars u (vertex values), cell scalars eta_K, pe_class (1 on
/// convection-dominated cells, 0 otherwise) and sigma_mag (flux magnitude
/// at the barycenter).
void write_vtk(const std::string& path, const Mesh& mesh, const ScalarSpace& scalar,
               const FluxSpace& flux, const Eigen::VectorXd& scalar_coeffs,
               const Eigen::VectorXd& flux_coeffs, const std::vector<double>& eta,
               const std::vector<bool>& convective);

}  // namespace lsfem
