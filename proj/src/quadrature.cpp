#include "lsfem/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lsfem {

namespace {

void orbit1(TriangleRule& r, double w) {
  r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, w});
}

/// Permutations of (1-2a, a, a), each with weight w.
void orbit3(TriangleRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  r.points.push_back({b, a, a, w});
  r.points.push_back({a, b, a, w});
  r.points.push_back({a, a, b, w});
}

/// All six permutations of (a, b, 1-a-b), each with weight w.
void orbit6(TriangleRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  r.points.push_back({a, b, c, w});
  r.points.push_back({a, c, b, w});
  r.points.push_back({b, a, c, w});
  r.points.push_back({b, c, a, w});
  r.points.push_back({c, a, b, w});
  r.points.push_back({c, b, a, w});
}

TriangleRule make_rule(int degree) {
  TriangleRule r;
  r.degree = degree;
  switch (degree) {
    case 1:
      orbit1(r, 1.0);
      break;
    case 2:
      orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 4:
      orbit3(r, 0.445948490915965, 0.223381589678011);
      orbit3(r, 0.091576213509771, 0.109951743655322);
      break;
    case 5:
      orbit1(r, 0.225);
      orbit3(r, 0.470142064105115, 0.132394152788506);
      orbit3(r, 0.101286507323456, 0.125939180544827);
      break;
    case 6:
      orbit3(r, 0.249286745170910, 0.116786275726379);
      orbit3(r, 0.063089014491502, 0.050844906370207);
      orbit6(r, 0.310352451033785, 0.053145049844816, 0.082851075618374);
      break;
    case 8:
      orbit1(r, 0.1443156076776037);
      orbit3(r, 0.4592925882926019, 0.0950916342674040);
      orbit3(r, 0.1705693077516223, 0.1032173705347470);
      orbit3(r, 0.0505472283170363, 0.0324584976232151);
      orbit6(r, 0.2631128296350503, 0.7284923929551796, 0.0272303141743831);
      break;
    case 10:
      orbit1(r, 0.0908179903834367);
      orbit3(r, 0.4855776333838220, 0.0367259577562502);
      orbit3(r, 0.1094815754848491, 0.0453210594354064);
      orbit6(r, 0.1417072194143459, 0.3079398387641566, 0.0727579168456313);
      orbit6(r, 0.0250035347625841, 0.2466725606394549, 0.0283272425309417);
      orbit6(r, 0.0095408154002968, 0.0668032510120339, 0.0094216669636927);
      break;
    default:
      throw std::invalid_argument("triangle_rule: no rule of that exact degree");
  }
  return r;
}

int rule_degree_for(int order) {
  if (order <= 1) return 1;
  if (order == 2) return 2;
  if (order <= 4) return 4;
  if (order == 5) return 5;
  if (order == 6) return 6;
  if (order <= 8) return 8;
  if (order <= 10) return 10;
  throw std::invalid_argument("triangle_rule: order above 10 is not available");
}

/// Gauss-Legendre nodes on [-1,1] by Newton iteration on P_n, then mapped
/// to [0,1] with weights renormalized to sum to 1.
EdgeRule make_edge_rule(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("edge_rule: need 1..64 points");
  EdgeRule r;
  r.t.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.t[n - 1 - i] = 0.5 * (x + 1.0);
    r.w[n - 1 - i] = 0.5 * w;
  }
  return r;
}

}  // namespace

const TriangleRule& triangle_rule(int order) {
  static std::map<int, TriangleRule> cache;
  static std::mutex mtx;
  const int degree = rule_degree_for(order);
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_rule(degree)).first;
  return it->second;
}

const EdgeRule& edge_rule(int points) {
  static std::map<int, EdgeRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, make_edge_rule(points)).first;
  return it->second;
}

}  // namespace lsfem
