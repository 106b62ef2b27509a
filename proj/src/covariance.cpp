#include "axisym/covariance.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace axisym {

namespace detail {

ModeForms mode_forms(const SpectrumModel& model, int m, int truncation,
                     const LegendreTable& t1, const LegendreTable& t2,
                     bool force_general) {
  const int N = truncation;
  ModeForms out;
  const double lam = model.lambda(m);
  if (lam == 0.0) return out;

  if (model.rho.is_kronecker() && !force_general) {
    double sf = 0.0;
    for (int n = m; n <= N; ++n) sf += model.xi(n) * t1(n, m) * t2(n, m);
    out.f = lam * sf;
    if (m >= 1 && model.kappa != 0.0 && model.kappa == std::nearbyint(model.kappa)) {
      // g is supported on the two off-diagonals n - n2 = +-kappa.
      const int q = static_cast<int>(std::llround(model.kappa));
      double sg = 0.0;
      for (int n = m; n <= N; ++n) {
        const int lo = n - std::abs(q), hi = n + std::abs(q);
        if (lo >= m && lo <= N && lo != n) sg += g(model, m, n, lo) * t1(n, m) * t2(lo, m);
        if (hi >= m && hi <= N && hi != n) sg += g(model, m, n, hi) * t1(n, m) * t2(hi, m);
      }
      out.g = sg;
    }
    return out;
  }

  const int k = N - m + 1;
  std::vector<double> u(k), v(k);
  for (int n = m; n <= N; ++n) {
    const double sx = std::sqrt(model.xi(n));
    u[n - m] = sx * t1(n, m);
    v[n - m] = sx * t2(n, m);
  }
  // rho at the integer lags d = n - n2 in [-(k-1), k-1], plus kappa shifts.
  std::vector<double> rho0(2 * k - 1), rho_minus, rho_plus;
  for (int d = -(k - 1); d <= k - 1; ++d) rho0[d + k - 1] = model.rho(static_cast<double>(d));
  const bool want_g = m >= 1 && model.kappa != 0.0;
  if (want_g) {
    rho_minus.resize(2 * k - 1);
    rho_plus.resize(2 * k - 1);
    for (int d = -(k - 1); d <= k - 1; ++d) {
      rho_minus[d + k - 1] = model.rho(static_cast<double>(d) - model.kappa);
      rho_plus[d + k - 1] = model.rho(static_cast<double>(d) + model.kappa);
    }
  }
  double sf = 0.0, sg = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double uv = u[i] * v[j];
      sf += rho0[i - j + k - 1] * uv;
      if (want_g) sg += (rho_minus[i - j + k - 1] - rho_plus[i - j + k - 1]) * uv;
    }
  }
  out.f = lam * sf;
  out.g = lam / 4.0 * sg;
  return out;
}

}  // namespace detail

namespace {

void require_colat(double colat) {
  if (!(colat >= 0.0 && colat <= kPi))
    throw std::invalid_argument("cov: colatitude outside [0, pi]");
}

}  // namespace

double cov(const CovarianceSpec& spec, const LegendreTable& t1, const LegendreTable& t2,
           double dlon) {
  const int N = spec.truncation;
  double acc = detail::mode_forms(spec.model, 0, N, t1, t2).f;
  for (int m = 1; m <= N; ++m) {
    const auto forms = detail::mode_forms(spec.model, m, N, t1, t2);
    if (forms.f == 0.0 && forms.g == 0.0) continue;
    // u2^T G u1 = -u1^T G u2; see header note on the orientation.
    acc += 2.0 * (forms.f * std::cos(m * dlon) - forms.g * std::sin(m * dlon));
  }
  return acc;
}

double cov(const CovarianceSpec& spec, double colat1, double colat2, double dlon) {
  require_colat(colat1);
  require_colat(colat2);
  if (spec.truncation < 0) throw std::invalid_argument("cov: negative truncation");
  const LegendreTable t1 = ptilde_table(spec.truncation, std::cos(colat1));
  if (colat1 == colat2) return cov(spec, t1, t1, dlon);
  const LegendreTable t2 = ptilde_table(spec.truncation, std::cos(colat2));
  return cov(spec, t1, t2, dlon);
}

double cov(const CovarianceSpec& spec, const SpherePoint& p1, const SpherePoint& p2) {
  return cov(spec, p1.colat(), p2.colat(), p1.lon() - p2.lon());
}

double cov_isotropic(const XiFamily& xi, int truncation, double d) {
  if (!(d >= 0.0 && d <= kPi))
    throw std::invalid_argument("cov_isotropic: distance outside [0, pi]");
  if (truncation < 0) throw std::invalid_argument("cov_isotropic: negative truncation");
  const double x = std::cos(d);
  double acc = xi(0);  // P_0 = 1
  double pm1 = 1.0, p = x;
  for (int n = 1; n <= truncation; ++n) {
    acc += xi(n) * (2.0 * n + 1.0) * p;
    const double pp = ((2.0 * n + 1.0) * x * p - n * pm1) / (n + 1.0);
    pm1 = p;
    p = pp;
  }
  return acc / kFourPi;
}

double variogram(const CovarianceSpec& spec, double colat, double dlon) {
  require_colat(colat);
  const LegendreTable t = ptilde_table(spec.truncation, std::cos(colat));
  return cov(spec, t, t, 0.0) - cov(spec, t, t, dlon);
}

}  // namespace axisym
