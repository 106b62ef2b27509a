#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "axisym/covariance.hpp"

using namespace axisym;

namespace {

SpectrumModel example1_model(int alpha, double kappa = 0.0) {
  return SpectrumModel{XiFamily::legendre_matern(100.0, 1.5), RhoFamily::kronecker(),
                       LambdaFamily::indicator(alpha), kappa};
}

double rand_colat(std::mt19937_64& eng) {
  return std::uniform_real_distribution<double>(0.0, kPi)(eng);
}

double rand_dlon(std::mt19937_64& eng) {
  return std::uniform_real_distribution<double>(-kTwoPi, kTwoPi)(eng);
}

}  // namespace

TEST_CASE("reversible models are symmetric in dlon") {
  const CovarianceSpec spec{example1_model(8, 0.0), 20};
  std::mt19937_64 eng(1);
  for (int i = 0; i < 200; ++i) {
    const double l1 = rand_colat(eng), l2 = rand_colat(eng), dl = rand_dlon(eng);
    CHECK(std::fabs(cov(spec, l1, l2, dl) - cov(spec, l1, l2, -dl)) <= 1e-12);
  }
}

TEST_CASE("exchange symmetry cov(L1,L2,dl) = cov(L2,L1,-dl)") {
  SpectrumModel model{XiFamily::multiquadric(0.7), RhoFamily::exponential(1.0),
                      LambdaFamily::indicator(6), 1.3};
  const CovarianceSpec spec{model, 16};
  std::mt19937_64 eng(2);
  for (int i = 0; i < 200; ++i) {
    const double l1 = rand_colat(eng), l2 = rand_colat(eng), dl = rand_dlon(eng);
    CHECK(std::fabs(cov(spec, l1, l2, dl) - cov(spec, l2, l1, -dl)) <= 1e-12);
  }
}

TEST_CASE("irreversibility shows up only off the reversible case") {
  // Example-1 family with the antisymmetric part switched on: the
  // asymmetry statistic must be strictly positive for kappa = 1 and zero
  // for kappa = 0.
  const CovarianceSpec rev{example1_model(8, 0.0), 20};
  const CovarianceSpec irrev{example1_model(8, 1.0), 20};
  double asym_rev = 0.0, asym_irrev = 0.0;
  for (double l1 : {kPi / 3, kPi / 2, 2 * kPi / 3}) {
    for (double l2 : {l1 - 0.15, l1, l1 + 0.15}) {
      for (double dl : {0.05, 0.1, 0.2}) {
        asym_rev = std::max(asym_rev,
                            std::fabs(cov(rev, l1, l2, dl) - cov(rev, l1, l2, -dl)));
        asym_irrev = std::max(asym_irrev,
                              std::fabs(cov(irrev, l1, l2, dl) - cov(irrev, l1, l2, -dl)));
      }
    }
  }
  CHECK(asym_rev <= 1e-12);
  CHECK(asym_irrev > 0.0);
  CHECK(asym_irrev > 1e-10);  // genuinely nonzero, not rounding noise
}

TEST_CASE("exponential-rho irreversibility with lambda_1 > 0") {
  const SpectrumModel model{XiFamily::multiquadric(0.7), RhoFamily::exponential(1.0),
                            LambdaFamily::indicator(3), 1.0};
  const CovarianceSpec spec{model, 12};
  double asym = 0.0;
  for (double l2 : {0.9, 1.2, 1.5})
    asym = std::max(asym, std::fabs(cov(spec, 1.2, l2, 0.3) - cov(spec, 1.2, l2, -0.3)));
  CHECK(asym > 1e-6);
}

TEST_CASE("longitudinal stationarity through point overload") {
  const SpectrumModel model{XiFamily::multiquadric(0.6), RhoFamily::exponential(0.8),
                            LambdaFamily::rational(0.2), 0.7};
  const CovarianceSpec spec{model, 14};
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> ulon(0.0, kTwoPi);
  std::uniform_real_distribution<double> ushift(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const SpherePoint p1(rand_colat(eng), ulon(eng));
    const SpherePoint p2(rand_colat(eng), ulon(eng));
    const double s = ushift(eng);
    // The point overload feeds lon1 - lon2 to the longitude-difference
    // form; a common shift must leave the value unchanged.
    const double base = cov(spec, p1.colat(), p2.colat(), p1.lon() - p2.lon());
    const double shifted =
        cov(spec, p1.colat(), p2.colat(), (p1.lon() + s) - (p2.lon() + s));
    CHECK(std::fabs(base - shifted) <= 1e-12);
    CHECK(cov(spec, p1, p2) == base);
  }
}

TEST_CASE("cov_isotropic anchors") {
  SUBCASE("d = 0 is the plain truncated variance sum") {
    const XiFamily xi = XiFamily::multiquadric(0.7);
    const int N = 25;
    double expected = 0.0;
    for (int n = 0; n <= N; ++n) expected += xi(n) * (2.0 * n + 1.0) / kFourPi;
    CHECK(cov_isotropic(xi, N, 0.0) == doctest::Approx(expected).epsilon(1e-14));
  }

  SUBCASE("multiquadric closed form at d = 0 for large N") {
    // Geometric-series oracle: sum (1-d) d^n (2n+1) = (1+d)/(1-d).
    const double delta = 0.7;
    const XiFamily xi = XiFamily::multiquadric(delta);
    const double closed_form = (1.0 + delta) / (1.0 - delta) / kFourPi;
    CHECK(cov_isotropic(xi, 400, 0.0) == doctest::Approx(closed_form).epsilon(1e-12));
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(cov_isotropic(XiFamily::multiquadric(0.5), 10, -0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(cov_isotropic(XiFamily::multiquadric(0.5), 10, kPi + 0.1),
                    std::invalid_argument);
  }
}

TEST_CASE("isotropy equivalence of the two series routes") {
  // lambda = ones, Kronecker rho, kappa = 0: the axially symmetric series
  // must reduce to the Schoenberg form through the addition theorem.
  const SpectrumModel model{XiFamily::multiquadric(0.7), RhoFamily::kronecker(),
                            LambdaFamily::ones(), 0.0};
  const CovarianceSpec spec{model, 30};
  std::mt19937_64 eng(4);
  std::uniform_real_distribution<double> ulon(0.0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const SpherePoint p1(rand_colat(eng), ulon(eng));
    const SpherePoint p2(rand_colat(eng), ulon(eng));
    const double via_axisym = cov(spec, p1, p2);
    const double via_schoenberg =
        cov_isotropic(model.xi, 30, great_circle_distance(p1, p2));
    CHECK(std::fabs(via_axisym - via_schoenberg) <= 1e-10);
  }
}

TEST_CASE("Kronecker fast path agrees with the dense route") {
  const SpectrumModel model = example1_model(8, 1.0);
  const CovarianceSpec spec{model, 18};
  std::mt19937_64 eng(5);
  for (int i = 0; i < 50; ++i) {
    const double l1 = rand_colat(eng), l2 = rand_colat(eng);
    const LegendreTable t1 = ptilde_table(spec.truncation, std::cos(l1));
    const LegendreTable t2 = ptilde_table(spec.truncation, std::cos(l2));
    for (int m = 0; m <= spec.truncation; ++m) {
      const auto fast = detail::mode_forms(model, m, spec.truncation, t1, t2, false);
      const auto dense = detail::mode_forms(model, m, spec.truncation, t1, t2, true);
      CHECK(std::fabs(fast.f - dense.f) <= 1e-14);
      CHECK(std::fabs(fast.g - dense.g) <= 1e-14);
    }
  }
}

TEST_CASE("matrix-level positive semidefiniteness") {
  std::mt19937_64 eng(6);
  std::uniform_real_distribution<double> u01(0.1, 0.9);
  std::uniform_real_distribution<double> ukappa(-2.0, 2.0);
  std::uniform_real_distribution<double> ulon(0.0, kTwoPi);
  for (int trial = 0; trial < 20; ++trial) {
    const XiFamily xi = trial % 2 == 0
                            ? XiFamily::multiquadric(u01(eng))
                            : XiFamily::legendre_matern(5.0 + 50.0 * u01(eng),
                                                        0.7 + u01(eng));
    const RhoFamily rho =
        trial % 3 == 0 ? RhoFamily::kronecker() : RhoFamily::exponential(0.5 + u01(eng));
    const LambdaFamily lambda =
        trial % 2 == 0 ? LambdaFamily::indicator(static_cast<int>(eng() % 8))
                       : LambdaFamily::rational(u01(eng));
    const CovarianceSpec spec{SpectrumModel{xi, rho, lambda, ukappa(eng)}, 12};

    const int n_pts = 15;
    std::vector<SpherePoint> pts;
    for (int i = 0; i < n_pts; ++i) pts.emplace_back(rand_colat(eng), ulon(eng));
    Eigen::MatrixXd C(n_pts, n_pts);
    for (int i = 0; i < n_pts; ++i)
      for (int j = 0; j < n_pts; ++j) C(i, j) = cov(spec, pts[i], pts[j]);

    CHECK((C - C.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(C, Eigen::EigenvaluesOnly);
    CHECK(solver.eigenvalues().minCoeff() >=
          -1e-8 * C.trace() / static_cast<double>(n_pts));
  }
}

TEST_CASE("nonnegative variance for admissible models") {
  std::mt19937_64 eng(7);
  const CovarianceSpec spec{example1_model(10, 1.0), 20};
  for (int i = 0; i < 100; ++i) {
    const double l = rand_colat(eng);
    CHECK(cov(spec, l, l, 0.0) >= 0.0);
  }
}

TEST_CASE("variogram basics") {
  SUBCASE("zero at zero lag") {
    const CovarianceSpec spec{example1_model(8), 20};
    CHECK(variogram(spec, 1.1, 0.0) == 0.0);
  }

  SUBCASE("longitudinally independent model has a flat variogram") {
    const CovarianceSpec spec{example1_model(0), 20};
    for (double dl : {0.1, 0.5, 1.0, 3.0})
      CHECK(std::fabs(variogram(spec, 1.1, dl)) <= 1e-15);
  }

  SUBCASE("Example-1 variogram nonnegative and nondecreasing near the origin") {
    const CovarianceSpec spec{example1_model(10), 30};
    double prev = 0.0;
    for (int k = 0; k <= 20; ++k) {
      const double gamma = variogram(spec, kPi / 2, 0.01 * k);
      CHECK(gamma >= prev - 1e-15);
      prev = gamma;
    }
  }
}
