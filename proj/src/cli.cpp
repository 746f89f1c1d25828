#include "lsfem/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "lsfem/problems.hpp"
#include "lsfem/vtk.hpp"

namespace lsfem {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_time(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

ProblemSpec make_problem(const std::string& name, double eps) {
  if (name == "boundary-layer") return boundary_layer_problem(eps);
  if (name == "interior-layer") return interior_layer_problem(eps);
  if (name == "manufactured") return manufactured_problem(eps);
  throw std::invalid_argument("unknown problem: " + name);
}

std::string convergence_csv(const std::vector<LevelRecord>& levels) {
  std::ostringstream out;
  out << "level,triangles,dofs,eta,error_norm,eff_index,marked,t_assembly_s,t_solve_s\n";
  for (const auto& r : levels) {
    out << r.level << ',' << r.triangles << ',' << r.dofs << ',' << fmt(r.eta) << ',';
    if (r.error_norm) out << fmt(*r.error_norm);
    out << ',';
    if (r.eff_index) out << fmt(*r.eff_index);
    out << ',' << r.marked << ',' << fmt_time(r.t_assembly_s) << ','
        << fmt_time(r.t_solve_s) << '\n';
  }
  return out.str();
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Adaptive least-squares solver for convection-dominated "
               "diffusion-reaction problems on the unit square"};

  std::string problem = "boundary-layer";
  int formulation = 1;
  double epsilon = 1e-3;
  double theta = 0.6;
  double tol = 0.5;
  int max_iter = 60;
  int rt_index = 0;
  int degree = 1;
  std::string out_csv, out_vtk;
  bool true_error = false;

  app.add_option("--problem", problem, "Problem to solve")
      ->check(CLI::IsMember({"boundary-layer", "interior-layer", "manufactured"}))
      ->capture_default_str();
  app.add_option("--formulation", formulation, "Least-squares formulation")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  app.add_option("--epsilon", epsilon, "Diffusion coefficient")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--theta", theta, "Maximum-marking threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--tol", tol, "Stopping tolerance on the total estimate")
      ->capture_default_str();
  app.add_option("--max-iter", max_iter, "Refinement level cap")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--rt-index", rt_index, "Raviart-Thomas index for the flux")
      ->check(CLI::Range(0, 1))
      ->capture_default_str();
  app.add_option("--degree", degree, "Lagrange degree for the scalar")
      ->check(CLI::Range(1, 2))
      ->capture_default_str();
  app.add_option("--out", out_csv, "Write the convergence table to this CSV file");
  app.add_option("--vtk", out_vtk, "Write the final solution to this VTK file");
  app.add_flag("--true-error", true_error,
               "Also report the exact error (needs a known solution)");
  app.set_config("--config", "", "key=value config file; flags override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const ProblemSpec spec = make_problem(problem, epsilon);

    AdaptOptions opts;
    opts.formulation = formulation;
    opts.rt_index = rt_index;
    opts.degree = degree;
    opts.theta = theta;
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.compute_error = true_error;
    opts.keep_details = !out_vtk.empty();
    opts.on_level = [](const LevelRecord& r) {
      std::cout << "level " << r.level << ": triangles=" << r.triangles
                << " dofs=" << r.dofs << " eta=" << fmt(r.eta);
      if (r.error_norm) std::cout << " error=" << fmt(*r.error_norm);
      if (r.eff_index) std::cout << " eff=" << fmt(*r.eff_index);
      std::cout << " marked=" << r.marked << "\n";
    };

    const RunResult result = run_adaptive(spec, opts);

    switch (result.stop) {
      case StopReason::tolerance_met:
        std::cout << "stopped: tolerance met\n";
        break;
      case StopReason::max_iter_reached:
        std::cout << "stopped: iteration cap reached\n";
        break;
      case StopReason::all_indicators_zero:
        std::cout << "stopped: all indicators zero\n";
        break;
    }

    std::vector<std::string> written;
    if (!out_csv.empty()) {
      std::ofstream f(out_csv);
      if (!f) throw std::runtime_error("cannot open " + out_csv);
      f << convergence_csv(result.levels);
      if (!f) throw std::runtime_error("write failed for " + out_csv);
      written.push_back(out_csv);
    }
    if (!out_vtk.empty()) {
      const FluxSpace flux(result.mesh, rt_index);
      const ScalarSpace scalar(result.mesh, degree);
      write_vtk(out_vtk, result.mesh, scalar, flux, result.scalar_coeffs,
                result.flux_coeffs, result.levels.back().indicators,
                result.classification.convective);
      written.push_back(out_vtk);
    }
    for (const auto& path : written) std::cout << "wrote " << path << "\n";

    return result.stop == StopReason::max_iter_reached ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lsfem
