#include "axisym/spectrum.hpp"

#include <cmath>

namespace axisym {

XiFamily XiFamily::legendre_matern(double tau2, double nu) {
  if (!(tau2 > 0.0)) throw std::invalid_argument("XiFamily: tau2 must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("XiFamily: nu must be positive");
  return XiFamily(Kind::legendre_matern, tau2, nu, {});
}

XiFamily XiFamily::multiquadric(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("XiFamily: delta must lie in (0, 1)");
  return XiFamily(Kind::multiquadric, delta, 0.0, {});
}

XiFamily XiFamily::custom(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("XiFamily: empty custom sequence");
  for (double v : values)
    if (!(v >= 0.0)) throw std::invalid_argument("XiFamily: custom xi_n must be >= 0");
  return XiFamily(Kind::custom, 0.0, 0.0, std::move(values));
}

double XiFamily::operator()(int n) const {
  if (n < 0) throw std::invalid_argument("XiFamily: negative degree");
  switch (kind_) {
    case Kind::legendre_matern:
      return std::pow(p1_ + static_cast<double>(n) * n, -p2_ - 0.5);
    case Kind::multiquadric:
      return (1.0 - p1_) * std::pow(p1_, n);
    case Kind::custom:
      return n < static_cast<int>(values_.size()) ? values_[n] : 0.0;
  }
  return 0.0;
}

std::optional<DecayCertificate> XiFamily::default_certificate() const {
  if (kind_ == Kind::legendre_matern)
    return DecayCertificate{2.0 * p2_ + 1.0, 1.0, 0};
  return std::nullopt;
}

RhoFamily RhoFamily::kronecker() { return RhoFamily(Kind::kronecker, 0.0); }

RhoFamily RhoFamily::exponential(double phi) {
  if (!(phi > 0.0)) throw std::invalid_argument("RhoFamily: phi must be positive");
  return RhoFamily(Kind::exponential, phi);
}

double RhoFamily::operator()(double h) const {
  switch (kind_) {
    case Kind::kronecker:
      return h == 0.0 ? 1.0 : 0.0;
    case Kind::exponential:
      return std::exp(-phi_ * std::fabs(h));
  }
  return 0.0;
}

LambdaFamily LambdaFamily::indicator(int alpha) {
  if (alpha < 0) throw std::invalid_argument("LambdaFamily: alpha must be >= 0");
  return LambdaFamily(Kind::indicator, alpha, 0.0);
}

LambdaFamily LambdaFamily::rational(double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("LambdaFamily: gamma must be >= 0");
  return LambdaFamily(Kind::rational, 0, gamma);
}

LambdaFamily LambdaFamily::ones() { return LambdaFamily(Kind::ones, 0, 0.0); }

double LambdaFamily::operator()(int m) const {
  if (m < 0) throw std::invalid_argument("LambdaFamily: negative order");
  switch (kind_) {
    case Kind::indicator:
      return m <= alpha_ ? 1.0 : 0.0;
    case Kind::rational:
      return 1.0 / (1.0 + gamma_ * static_cast<double>(m) * m);
    case Kind::ones:
      return 1.0;
  }
  return 0.0;
}

std::optional<int> LambdaFamily::max_nonzero_order() const {
  if (kind_ == Kind::indicator) return alpha_;
  return std::nullopt;
}

double f(const SpectrumModel& model, int m, int n, int n2) {
  if (m < 0 || n < m || n2 < m)
    throw std::invalid_argument("f: requires n, n2 >= m >= 0");
  const double lam = model.lambda(m);
  if (lam == 0.0) return 0.0;
  return std::sqrt(model.xi(n) * model.xi(n2)) * model.rho(static_cast<double>(n - n2)) * lam;
}

double g(const SpectrumModel& model, int m, int n, int n2) {
  if (m < 1) throw std::invalid_argument("g: requires m >= 1 (no sine terms at m = 0)");
  if (n < m || n2 < m) throw std::invalid_argument("g: requires n, n2 >= m");
  if (n == n2 || model.kappa == 0.0) return 0.0;
  const double lam = model.lambda(m);
  if (lam == 0.0) return 0.0;
  const double h = static_cast<double>(n - n2);
  return std::sqrt(model.xi(n) * model.xi(n2)) * lam / 4.0 *
         (model.rho(h - model.kappa) - model.rho(h + model.kappa));
}

GammaBlock::GammaBlock(const SpectrumModel& model, int order, int max_degree)
    : order_(order), first_degree_(order) {
  if (order < 0 || max_degree < order)
    throw std::invalid_argument("GammaBlock: requires max_degree >= order >= 0");
  const int k = max_degree - order + 1;
  F_.resize(k, k);
  G_ = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      const double v = f(model, order, order + i, order + j);
      F_(i, j) = v;
      F_(j, i) = v;
    }
  }
  if (order >= 1 && model.kappa != 0.0) {
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const double v = g(model, order, order + i, order + j);
        G_(i, j) = v;
        G_(j, i) = -v;
      }
    }
  }
  validate();
}

GammaBlock::GammaBlock(int order, int first_degree, Eigen::MatrixXd F, Eigen::MatrixXd G)
    : order_(order), first_degree_(first_degree), F_(std::move(F)), G_(std::move(G)) {
  if (order < 0 || first_degree < order)
    throw std::invalid_argument("GammaBlock: requires first_degree >= order >= 0");
  const Eigen::Index k = F_.rows();
  if (F_.cols() != k || G_.rows() != k || G_.cols() != k)
    throw std::invalid_argument("GammaBlock: F and G must be square and same size");
  const double scale = F_.cwiseAbs().maxCoeff() + G_.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * (scale > 0.0 ? scale : 1.0);
  if (((F_ - F_.transpose()).cwiseAbs().maxCoeff()) > tol)
    throw std::invalid_argument("GammaBlock: F not symmetric");
  if (((G_ + G_.transpose()).cwiseAbs().maxCoeff()) > tol)
    throw std::invalid_argument("GammaBlock: G not antisymmetric");
  validate();
}

Eigen::MatrixXd GammaBlock::assembled() const {
  const Eigen::Index k = F_.rows();
  Eigen::MatrixXd big(2 * k, 2 * k);
  big.topLeftCorner(k, k) = F_;
  big.topRightCorner(k, k) = G_;
  big.bottomLeftCorner(k, k) = G_.transpose();
  big.bottomRightCorner(k, k) = F_;
  return big;
}

void GammaBlock::validate() {
  const Eigen::MatrixXd big = assembled();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(big, Eigen::EigenvaluesOnly);
  min_eigenvalue_ = solver.eigenvalues().minCoeff();
  const double scale = big.trace() / static_cast<double>(big.rows());
  if (min_eigenvalue_ < -kPsdTol * (scale > 0.0 ? scale : 1.0))
    throw AdmissibilityError(
        "GammaBlock: block at order m=" + std::to_string(order_) +
            " is not positive semidefinite (min eigenvalue " +
            std::to_string(min_eigenvalue_) + ")",
        order_);
}

GammaBlock gamma_block(const SpectrumModel& model, int order, int max_degree) {
  return GammaBlock(model, order, max_degree);
}

C4Report check_c4(const SpectrumModel& model, const DecayCertificate& certificate,
                  C4Branch branch) {
  C4Report report;
  report.n_check = kC4CheckDegree;

  report.certificate_holds = certificate.beta > 0.0 && certificate.r > 0.0;
  for (int n = certificate.n0 + 1; n <= kC4CheckDegree && report.certificate_holds; ++n) {
    if (model.xi(n) > certificate.r * std::pow(static_cast<double>(n), -certificate.beta))
      report.certificate_holds = false;
  }

  for (int n = 0; n <= kC4CheckDegree; ++n)
    report.variance_sum += model.xi(n) * (2.0 * n + 1.0);

  if (model.xi.kind() == XiFamily::Kind::multiquadric) {
    report.passes = true;
    report.reason = "geometric xi decay dominates every polynomial rate";
    return report;
  }
  if (!report.certificate_holds) {
    report.passes = false;
    report.reason = "decay certificate xi_n <= r n^{-beta} fails numerically";
    return report;
  }
  switch (branch) {
    case C4Branch::general:
      report.passes = certificate.beta > 4.0;
      report.reason = report.passes ? "beta > 4" : "general branch requires beta > 4";
      break;
    case C4Branch::kronecker:
      if (!model.rho.is_kronecker()) {
        report.passes = false;
        report.reason = "kronecker branch requires rho = delta_0^h";
      } else {
        report.passes = certificate.beta > 2.0;
        report.reason =
            report.passes ? "beta > 2 with Kronecker rho" : "kronecker branch requires beta > 2";
      }
      break;
  }
  return report;
}

}  // namespace axisym
