#include "lsfem/vtk.hpp"

#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace lsfem {

void write_vtk(const std::string& path, const Mesh& mesh, const ScalarSpace& scalar,
               const FluxSpace& flux, const Eigen::VectorXd& scalar_coeffs,
               const Eigen::VectorXd& flux_coeffs, const std::vector<double>& eta,
               const std::vector<bool>& convective) {
  const int nv = mesh.num_vertices();
  const int nt = mesh.num_triangles();
  if (eta.size() != static_cast<std::size_t>(nt) ||
      convective.size() != static_cast<std::size_t>(nt))
    throw std::invalid_argument("write_vtk: cell data size mismatch");
  if (scalar_coeffs.size() != scalar.num_dofs() || flux_coeffs.size() != flux.num_dofs())
    throw std::invalid_argument("write_vtk: coefficient size mismatch");

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_vtk: cannot open " + path);
  out << std::setprecision(17);

  out << "# vtk DataFile Version 3.0\n";
  out << "least-squares solution\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";

  out << "POINTS " << nv << " double\n";
  for (const auto& p : mesh.vertices) out << p.x() << " " << p.y() << " 0\n";

  out << "CELLS " << nt << " " << 4 * nt << "\n";
  for (const auto& T : mesh.triangles)
    out << "3 " << T.v[0] << " " << T.v[1] << " " << T.v[2] << "\n";

  out << "CELL_TYPES " << nt << "\n";
  for (int t = 0; t < nt; ++t) out << "5\n";

  out << "POINT_DATA " << nv << "\n";
  out << "SCALARS u double 1\n";
  out << "LOOKUP_TABLE default\n";
  // Lagrange vertex dofs are the vertex values for both degrees
  for (int v = 0; v < nv; ++v) out << scalar_coeffs[v] << "\n";

  out << "CELL_DATA " << nt << "\n";
  out << "SCALARS eta_K double 1\n";
  out << "LOOKUP_TABLE default\n";
  for (int t = 0; t < nt; ++t) out << eta[t] << "\n";

  out << "SCALARS pe_class int 1\n";
  out << "LOOKUP_TABLE default\n";
  for (int t = 0; t < nt; ++t) out << (convective[t] ? 1 : 0) << "\n";

  out << "SCALARS sigma_mag double 1\n";
  out << "LOOKUP_TABLE default\n";
  const std::array<double, 3> center{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  for (int t = 0; t < nt; ++t)
    out << flux.value(t, center, flux_coeffs).norm() << "\n";

  if (!out) throw std::runtime_error("write_vtk: write failed for " + path);
}

}  // namespace lsfem
