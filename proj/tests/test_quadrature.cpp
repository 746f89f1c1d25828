#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lsfem/quadrature.hpp"

using namespace lsfem;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// int over the reference triangle {x,y >= 0, x+y <= 1} of x^a y^b.
double monomial_integral(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

/// Rule applied on the reference triangle: lambda = (1-x-y, x, y).
double apply(const TriangleRule& r, int a, int b) {
  double s = 0.0;
  for (const auto& q : r.points)
    s += q.w * std::pow(q.l1, a) * std::pow(q.l2, b);
  return 0.5 * s;  // |K| = 1/2
}

}  // namespace

TEST_CASE("triangle rules are exact to their stated degree") {
  for (int degree : {1, 2, 4, 5, 6, 8, 10}) {
    const TriangleRule& r = triangle_rule(degree);
    CHECK(r.degree == degree);
    for (int a = 0; a + 0 <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) {
        const double exact = monomial_integral(a, b);
        CHECK_MESSAGE(apply(r, a, b) == doctest::Approx(exact).epsilon(1e-13),
                      "degree ", degree, " monomial x^", a, " y^", b);
      }
  }
}

TEST_CASE("rule lookup rounds the order up") {
  CHECK(triangle_rule(1).degree == 1);
  CHECK(triangle_rule(2).degree == 2);
  CHECK(triangle_rule(3).degree == 4);
  CHECK(triangle_rule(4).degree == 4);
  CHECK(triangle_rule(5).degree == 5);
  CHECK(triangle_rule(6).degree == 6);
  CHECK(triangle_rule(7).degree == 8);
  CHECK(triangle_rule(8).degree == 8);
  CHECK(triangle_rule(9).degree == 10);
  CHECK(triangle_rule(10).degree == 10);
  CHECK_THROWS(triangle_rule(11));
}

TEST_CASE("triangle rule points and weights are admissible") {
  for (int degree : {1, 2, 4, 5, 6, 8, 10}) {
    const TriangleRule& r = triangle_rule(degree);
    double wsum = 0.0;
    for (const auto& q : r.points) {
      CHECK(q.w > 0.0);
      CHECK(q.l0 > 0.0);
      CHECK(q.l1 > 0.0);
      CHECK(q.l2 > 0.0);
      CHECK(q.l0 + q.l1 + q.l2 == doctest::Approx(1.0).epsilon(1e-14));
      wsum += q.w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("specific high-order values") {
  // int x^3 y^2 = 3! 2! / 7! = 1/420
  CHECK(apply(triangle_rule(10), 3, 2) == doctest::Approx(1.0 / 420.0).epsilon(1e-13));
  // int x^5 y^5 = (5!)^2 / 12!
  CHECK(apply(triangle_rule(10), 5, 5) ==
        doctest::Approx(14400.0 / 479001600.0).epsilon(1e-12));
}

TEST_CASE("edge rules integrate polynomials on [0,1]") {
  for (int n = 1; n <= 8; ++n) {
    const EdgeRule& r = edge_rule(n);
    REQUIRE(static_cast<int>(r.t.size()) == n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.t[i], k);
      CHECK_MESSAGE(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13), "n=", n,
                    " k=", k);
    }
    // nodes are interior and symmetric about 1/2
    for (int i = 0; i < n; ++i) {
      CHECK(r.t[i] > 0.0);
      CHECK(r.t[i] < 1.0);
      CHECK(r.t[i] + r.t[n - 1 - i] == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(r.w[i] > 0.0);
    }
  }
}

TEST_CASE("edge rule reference values") {
  const EdgeRule& g2 = edge_rule(2);
  CHECK(g2.t[0] == doctest::Approx(0.21132486540518713).epsilon(1e-13));
  CHECK(g2.t[1] == doctest::Approx(0.78867513459481287).epsilon(1e-13));
  CHECK(g2.w[0] == doctest::Approx(0.5).epsilon(1e-13));

  const EdgeRule& g3 = edge_rule(3);
  CHECK(g3.t[0] == doctest::Approx(0.11270166537925831).epsilon(1e-12));
  CHECK(g3.t[1] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(g3.t[2] == doctest::Approx(0.88729833462074169).epsilon(1e-12));
  CHECK(g3.w[0] == doctest::Approx(5.0 / 18.0).epsilon(1e-13));
  CHECK(g3.w[1] == doctest::Approx(4.0 / 9.0).epsilon(1e-13));
}
