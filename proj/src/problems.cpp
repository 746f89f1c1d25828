#include "lsfem/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace lsfem {

namespace {
constexpr double kHalfPi = M_PI / 2.0;
}

ProblemSpec boundary_layer_problem(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("boundary_layer_problem: eps <= 0");
  ProblemSpec p;
  p.name = "boundary-layer";
  p.eps = eps;
  p.beta = [](const Vec2&) { return Vec2(1.0, 1.0); };
  p.c = [](const Vec2&) { return 0.0; };
  p.alpha0 = 0.0;

  const double denom = 1.0 - std::exp(-1.0 / eps);
  const double efloor = std::exp(-1.0 / eps);

  auto u = [=](const Vec2& x) {
    const double sx = std::sin(kHalfPi * x.x()), sy = std::sin(kHalfPi * x.y());
    const double E = std::exp(-(1.0 - x.x()) * (1.0 - x.y()) / eps);
    return sx + sy * (1.0 - sx) + (efloor - E) / denom;
  };
  auto grad_u = [=](const Vec2& x) {
    const double sx = std::sin(kHalfPi * x.x()), sy = std::sin(kHalfPi * x.y());
    const double cx = std::cos(kHalfPi * x.x()), cy = std::cos(kHalfPi * x.y());
    const double E = std::exp(-(1.0 - x.x()) * (1.0 - x.y()) / eps);
    return Vec2(kHalfPi * cx * (1.0 - sy) - E * (1.0 - x.y()) / (eps * denom),
                kHalfPi * cy * (1.0 - sx) - E * (1.0 - x.x()) / (eps * denom));
  };
  auto lap_u = [=](const Vec2& x) {
    const double sx = std::sin(kHalfPi * x.x()), sy = std::sin(kHalfPi * x.y());
    const double E = std::exp(-(1.0 - x.x()) * (1.0 - x.y()) / eps);
    const double rx = 1.0 - x.x(), ry = 1.0 - x.y();
    return -kHalfPi * kHalfPi * (sx * (1.0 - sy) + sy * (1.0 - sx)) -
           E * (ry * ry + rx * rx) / (eps * eps * denom);
  };

  p.f = [=](const Vec2& x) {
    const Vec2 gu = grad_u(x);
    return -eps * lap_u(x) + gu.x() + gu.y();
  };
  p.g = u;

  const double sq = std::sqrt(eps);
  ExactSolution ex;
  ex.u = u;
  ex.grad_u = grad_u;
  ex.sigma = [=](const Vec2& x) { return Vec2(-sq * grad_u(x)); };
  ex.div_sigma = [=](const Vec2& x) { return -sq * lap_u(x); };
  p.exact = std::move(ex);
  return p;
}

ProblemSpec interior_layer_problem(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("interior_layer_problem: eps <= 0");
  ProblemSpec p;
  p.name = "interior-layer";
  p.eps = eps;
  p.beta = [](const Vec2&) { return Vec2(0.5, 0.5 * std::sqrt(3.0)); };
  p.c = [](const Vec2&) { return 0.0; };
  p.f = [](const Vec2&) { return 0.0; };
  p.g = [](const Vec2& x) {
    constexpr double tol = 1e-12;
    // At the junction (1,0) between the strongly imposed inflow data and the
    // weakly imposed outflow condition, g takes the outflow-side limit 0 so a
    // pinned vertex value cannot fight the outflow penalty.
    if (x.y() < tol && x.x() < 1.0 - tol) return 1.0;  // bottom, 0 <= x < 1
    if (x.x() < tol && x.y() <= 0.2 + tol) return 1.0; // left, 0 <= y <= 1/5
    return 0.0;
  };
  p.alpha0 = 0.0;
  return p;
}

ProblemSpec manufactured_problem(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("manufactured_problem: eps <= 0");
  ProblemSpec p;
  p.name = "manufactured";
  p.eps = eps;
  p.beta = [](const Vec2&) { return Vec2(1.0, 1.0); };
  p.c = [](const Vec2&) { return 1.0; };
  p.f = [](const Vec2& x) { return x.x() + x.y() + x.x() * x.y(); };
  p.g = [](const Vec2& x) { return x.x() * x.y(); };
  p.alpha0 = 1.0;

  const double sq = std::sqrt(eps);
  ExactSolution ex;
  ex.u = [](const Vec2& x) { return x.x() * x.y(); };
  ex.grad_u = [](const Vec2& x) { return Vec2(x.y(), x.x()); };
  ex.sigma = [=](const Vec2& x) { return Vec2(-sq * x.y(), -sq * x.x()); };
  ex.div_sigma = [](const Vec2&) { return 0.0; };
  p.exact = std::move(ex);
  return p;
}

}  // namespace lsfem
