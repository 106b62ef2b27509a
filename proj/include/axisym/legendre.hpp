#pragma once

#include <cstddef>
#include <vector>

#include "axisym/sphere_geom.hpp"

namespace axisym {

/// Legendre polynomial P_n(x) for |x| <= 1, by the three-term recurrence
/// (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}.
double legendre_p(int n, double x);

/// Triangular table of fully normalized associated Legendre values
///
///   Ptilde_nm(x) = sqrt( (2n+1)/(4 pi) * (n-m)!/(n+m)! ) * P_nm(x),
///
/// for 0 <= m <= n <= max_degree, with the Condon-Shortley phase
/// (P_11(x) = -sqrt(1-x^2)). The recurrence runs directly on the
/// normalized values: the diagonal is seeded with incremental
/// square-root factors and each column then recursed upward in n, so no
/// raw factorial is ever formed. With this normalization
///
///   integral_{-1}^{1} Ptilde_nm Ptilde_n'm dx = delta_n^{n'} / (2 pi)
///
/// and |Ptilde_nm(x)| <= sqrt((2n+1)/(4 pi)) on [-1, 1].
class LegendreTable {
 public:
  LegendreTable(int max_degree, double x);

  int max_degree() const { return max_degree_; }
  double x() const { return x_; }

  /// Ptilde_nm(x); requires 0 <= m <= n <= max_degree.
  double operator()(int n, int m) const { return values_[index(n, m)]; }

 private:
  static std::size_t index(int n, int m) {
    return static_cast<std::size_t>(n) * (n + 1) / 2 + m;
  }

  int max_degree_;
  double x_;
  std::vector<double> values_;
};

/// Builds the full Ptilde table at x = cos(colatitude); |x| <= 1.
LegendreTable ptilde_table(int max_degree, double x);

/// |LHS - RHS| of the degree-n addition theorem
///   P_n(cos d_gc) = P_n(cos L1) P_n(cos L2)
///                   + 2 sum_m (n-m)!/(n+m)! cos(m dl) P_nm(cos L1) P_nm(cos L2),
/// with the right-hand side assembled from normalized Ptilde products.
double addition_theorem_check(int n, const SpherePoint& p1, const SpherePoint& p2);

/// Gauss-Legendre quadrature on [-1, 1]; exact for polynomial integrands
/// of degree <= 2*n_nodes - 1. Nodes ascending, weights positive.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n_nodes);

}  // namespace axisym
