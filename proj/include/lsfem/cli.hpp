#pragma once

#include <string>
#include <vector>

#include "lsfem/adapt.hpp"

namespace lsfem {

/// Problem by CLI name: boundary-layer, interior-layer or manufactured.
ProblemSpec make_problem(const std::string& name, double eps);

/// CSV convergence table, one row per level, with the header
/// level,triangles,dofs,eta,error_norm,eff_index,marked,t_assembly_s,t_solve_s
/// Optional columns are left empty when the run did not compute them.
std::string convergence_csv(const std::vector<LevelRecord>& levels);

/// Parses flags and an optional key=value config file (flags win), runs
/// the adaptive loop and writes the requested outputs, ending with a
/// manifest of written files. Returns 0 when the tolerance was met, 2
/// when the iteration cap was reached first, 1 on any error.
int run_cli(int argc, const char* const* argv);

}  // namespace lsfem
