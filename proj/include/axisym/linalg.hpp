#pragma once

#include <Eigen/Dense>
#include <optional>

namespace axisym {

/// Unpivoted Cholesky factorization S = L L^T for symmetric positive
/// SEMIdefinite S. Pivots within rel_tol * mean(diag) of zero are treated
/// as exactly zero and their columns annihilated, which handles the
/// rank-deficient blocks that arise whenever a lambda_m or xi_n vanishes.
/// Returns nullopt when a pivot is negative beyond tolerance or a zero
/// pivot leaves a non-negligible residual column (S not PSD).
///
/// For diagonal S the factor is diag(sqrt(S_ii)) exactly, which keeps the
/// general sampling path bit-identical to the specialized diagonal one.
std::optional<Eigen::MatrixXd> psd_cholesky(const Eigen::MatrixXd& S, double rel_tol);

/// psd_cholesky with escalating diagonal jitter eps * mean(diag),
/// eps in {0, 1e-14, 1e-12, 1e-10}. Throws AdmissibilityError naming
/// `order` if every attempt fails.
Eigen::MatrixXd psd_cholesky_jittered(const Eigen::MatrixXd& S, double rel_tol, int order);

}  // namespace axisym
