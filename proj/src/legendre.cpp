#include "axisym/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace axisym {

namespace {

void require_unit_interval(double x) {
  if (!(std::fabs(x) <= 1.0))
    throw std::invalid_argument("legendre: argument outside [-1, 1]");
}

}  // namespace

double legendre_p(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre_p: negative degree");
  require_unit_interval(x);
  if (n == 0) return 1.0;
  double pm1 = 1.0;
  double p = x;
  for (int k = 1; k < n; ++k) {
    const double pp = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
    pm1 = p;
    p = pp;
  }
  return p;
}

LegendreTable::LegendreTable(int max_degree, double x)
    : max_degree_(max_degree),
      x_(x),
      values_(static_cast<std::size_t>(max_degree + 1) * (max_degree + 2) / 2) {
  if (max_degree < 0) throw std::invalid_argument("LegendreTable: negative degree");
  require_unit_interval(x);

  const double s = std::sqrt((1.0 - x) * (1.0 + x));  // sin(colatitude) >= 0

  // Diagonal Ptilde_mm: each step multiplies by -sqrt((2m+1)/(2m)) * s,
  // the minus sign carrying the Condon-Shortley phase.
  values_[index(0, 0)] = std::sqrt(1.0 / kFourPi);
  for (int m = 1; m <= max_degree; ++m)
    values_[index(m, m)] =
        -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * values_[index(m - 1, m - 1)];

  // First off-diagonal, then upward in n on normalized values.
  for (int m = 0; m < max_degree; ++m) {
    values_[index(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * values_[index(m, m)];
    double prev_a = std::sqrt(2.0 * m + 3.0);
    for (int n = m + 2; n <= max_degree; ++n) {
      const double a = std::sqrt((4.0 * n * n - 1.0) /
                                 (static_cast<double>(n) * n - static_cast<double>(m) * m));
      values_[index(n, m)] =
          a * (x * values_[index(n - 1, m)] - values_[index(n - 2, m)] / prev_a);
      prev_a = a;
    }
  }
}

LegendreTable ptilde_table(int max_degree, double x) { return LegendreTable(max_degree, x); }

double addition_theorem_check(int n, const SpherePoint& p1, const SpherePoint& p2) {
  const double lhs = legendre_p(n, std::cos(great_circle_distance(p1, p2)));

  const LegendreTable t1(n, std::cos(p1.colat()));
  const LegendreTable t2(n, std::cos(p2.colat()));
  const double dl = p1.lon() - p2.lon();

  // (n-m)!/(n+m)! P_nm P_nm = 4 pi/(2n+1) Ptilde_nm Ptilde_nm
  double rhs = t1(n, 0) * t2(n, 0);
  for (int m = 1; m <= n; ++m) rhs += 2.0 * std::cos(m * dl) * t1(n, m) * t2(n, m);
  rhs *= kFourPi / (2.0 * n + 1.0);

  return std::fabs(lhs - rhs);
}

GaussLegendreRule gauss_legendre(int n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(n_nodes);
  rule.weights.resize(n_nodes);

  const int half = (n_nodes + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi-style initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n_nodes + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double pm1 = 1.0, p = x;
      for (int k = 1; k < n_nodes; ++k) {
        const double pp = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
        pm1 = p;
        p = pp;
      }
      dp = n_nodes * (pm1 - x * p) / (1.0 - x * x);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    // Final derivative refresh at the converged node.
    double pm1 = 1.0, p = x;
    for (int k = 1; k < n_nodes; ++k) {
      const double pp = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
      pm1 = p;
      p = pp;
    }
    dp = n_nodes * (pm1 - x * p) / (1.0 - x * x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;  // guesses start near +1; store ascending
    rule.weights[i] = w;
    rule.nodes[n_nodes - 1 - i] = x;
    rule.weights[n_nodes - 1 - i] = w;
  }
  if (n_nodes % 2 == 1) rule.nodes[half - 1] = 0.0;  // exact middle node
  return rule;
}

}  // namespace axisym
