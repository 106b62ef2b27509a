#pragma once

#include "axisym/legendre.hpp"
#include "axisym/spectrum.hpp"
#include "axisym/sphere_geom.hpp"

namespace axisym {

/// A spectrum model together with the shared truncation degree N applied
/// to both the order and degree sums.
struct CovarianceSpec {
  SpectrumModel model;
  int truncation = 0;
};

namespace detail {

/// Quadratic forms u1^T F_m u2 and u1^T G_m u2 for one order m, where
/// u_i(n) = Ptilde_nm(x_i) over degrees m..N. Kronecker rho collapses the
/// double sums to the diagonal (and, for integer kappa, two off-diagonals);
/// force_general bypasses that fast path so tests can compare routes.
struct ModeForms {
  double f = 0.0;
  double g = 0.0;
};

ModeForms mode_forms(const SpectrumModel& model, int m, int truncation,
                     const LegendreTable& t1, const LegendreTable& t2,
                     bool force_general = false);

}  // namespace detail

/// Truncated axially symmetric covariance C(L1, L2, dlon).
///
/// The sine-term orientation is pinned by the coefficient conditions
/// cov{a_nm, b_n'm} = +g_m(n,n')/2 with dlon = lon1 - lon2, which makes the
/// synthesized fields reproduce exactly this function.
double cov(const CovarianceSpec& spec, double colat1, double colat2, double dlon);

/// Same, with precomputed Ptilde tables (panel sweeps reuse tables heavily).
double cov(const CovarianceSpec& spec, const LegendreTable& t1, const LegendreTable& t2,
           double dlon);

/// Covariance between two points; longitudes enter only through their
/// difference lon1 - lon2.
double cov(const CovarianceSpec& spec, const SpherePoint& p1, const SpherePoint& p2);

/// Truncated Schoenberg series sum_n xi_n (2n+1)/(4 pi) P_n(cos d) of an
/// isotropic covariance at great-circle distance d in [0, pi].
double cov_isotropic(const XiFamily& xi, int truncation, double d);

/// Local semivariogram along the parallel at the given colatitude:
/// gamma(L, dlon) = C(L, L, 0) - C(L, L, dlon).
double variogram(const CovarianceSpec& spec, double colat, double dlon);

}  // namespace axisym
