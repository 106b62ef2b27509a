#include "axisym/linalg.hpp"

#include <cmath>
#include <string>

#include "axisym/spectrum.hpp"

namespace axisym {

std::optional<Eigen::MatrixXd> psd_cholesky(const Eigen::MatrixXd& S, double rel_tol) {
  const Eigen::Index d = S.rows();
  const double scale = S.diagonal().sum() / static_cast<double>(d);
  if (scale < 0.0) return std::nullopt;
  const double tol = rel_tol * (scale > 0.0 ? scale : 1.0);

  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double pivot = S(j, j);
    for (Eigen::Index t = 0; t < j; ++t) pivot -= L(j, t) * L(j, t);
    if (pivot > tol) {
      const double ljj = std::sqrt(pivot);
      L(j, j) = ljj;
      for (Eigen::Index i = j + 1; i < d; ++i) {
        double r = S(i, j);
        for (Eigen::Index t = 0; t < j; ++t) r -= L(i, t) * L(j, t);
        L(i, j) = r / ljj;
      }
    } else if (pivot >= -tol) {
      // Semidefinite pivot: the remaining column must vanish too.
      for (Eigen::Index i = j + 1; i < d; ++i) {
        double r = S(i, j);
        for (Eigen::Index t = 0; t < j; ++t) r -= L(i, t) * L(j, t);
        if (std::fabs(r) > 10.0 * std::sqrt(tol * std::max(S(i, i), tol)))
          return std::nullopt;
      }
    } else {
      return std::nullopt;
    }
  }
  return L;
}

Eigen::MatrixXd psd_cholesky_jittered(const Eigen::MatrixXd& S, double rel_tol, int order) {
  const double scale = S.diagonal().sum() / static_cast<double>(S.rows());
  for (const double eps : {0.0, 1e-14, 1e-12, 1e-10}) {
    Eigen::MatrixXd J = S;
    if (eps > 0.0)
      J.diagonal().array() += eps * (scale > 0.0 ? scale : 1.0);
    if (auto L = psd_cholesky(J, rel_tol)) return *L;
  }
  throw AdmissibilityError(
      "coefficient covariance factorization failed at order m=" + std::to_string(order),
      order);
}

}  // namespace axisym
