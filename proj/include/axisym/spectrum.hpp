#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace axisym {

/// Raised when an assembled coefficient covariance block fails its
/// positive-semidefiniteness check; `order` names the offending m.
class AdmissibilityError : public std::runtime_error {
 public:
  AdmissibilityError(const std::string& what, int order)
      : std::runtime_error(what), order_(order) {}
  int order() const { return order_; }

 private:
  int order_;
};

/// Pointwise decay bound xi_n <= r * n^{-beta} for n > n0, the hypothesis
/// feeding the summability test for the spectral family.
struct DecayCertificate {
  double beta = 0.0;
  double r = 0.0;
  int n0 = 0;
};

/// Degree sequence xi_n >= 0 controlling the per-degree variance budget.
class XiFamily {
 public:
  enum class Kind { legendre_matern, multiquadric, custom };

  /// xi_n = (tau2 + n^2)^{-nu - 1/2}; tau2 > 0, nu > 0.
  static XiFamily legendre_matern(double tau2, double nu);
  /// xi_n = (1 - delta) * delta^n; delta in (0, 1).
  static XiFamily multiquadric(double delta);
  /// Explicit nonnegative head; xi_n = 0 beyond the stored range.
  static XiFamily custom(std::vector<double> values);

  double operator()(int n) const;

  Kind kind() const { return kind_; }
  double tau2() const { return p1_; }
  double nu() const { return p2_; }
  double delta() const { return p1_; }
  const std::vector<double>& values() const { return values_; }

  /// Certificate implied by the family's closed form, when one exists:
  /// Legendre-Matern satisfies xi_n <= n^{-(2 nu + 1)} for all n >= 1.
  std::optional<DecayCertificate> default_certificate() const;

 private:
  XiFamily(Kind k, double p1, double p2, std::vector<double> v)
      : kind_(k), p1_(p1), p2_(p2), values_(std::move(v)) {}

  Kind kind_;
  double p1_ = 0.0;
  double p2_ = 0.0;
  std::vector<double> values_;
};

/// Stationary correlation rho(h) across degrees. The Kronecker variant is
/// a sequence: at non-integer lags (which arise when the irreversibility
/// shift kappa is non-integer) it evaluates to 0 by definition.
class RhoFamily {
 public:
  enum class Kind { kronecker, exponential };

  static RhoFamily kronecker();
  /// rho(h) = exp(-phi |h|); phi > 0.
  static RhoFamily exponential(double phi);

  double operator()(double h) const;

  Kind kind() const { return kind_; }
  bool is_kronecker() const { return kind_ == Kind::kronecker; }
  double phi() const { return phi_; }

 private:
  RhoFamily(Kind k, double phi) : kind_(k), phi_(phi) {}

  Kind kind_;
  double phi_;
};

/// Bounded nonnegative order weights lambda_m in [0, 1].
class LambdaFamily {
 public:
  enum class Kind { indicator, rational, ones };

  /// lambda_m = 1 for m <= alpha, else 0; alpha >= 0.
  static LambdaFamily indicator(int alpha);
  /// lambda_m = (1 + gamma m^2)^{-1}; gamma >= 0.
  static LambdaFamily rational(double gamma);
  static LambdaFamily ones();

  double operator()(int m) const;

  Kind kind() const { return kind_; }
  int alpha() const { return alpha_; }
  double gamma() const { return gamma_; }

  /// Largest order with lambda_m != 0, when the support is finite.
  std::optional<int> max_nonzero_order() const;

 private:
  LambdaFamily(Kind k, int alpha, double gamma) : kind_(k), alpha_(alpha), gamma_(gamma) {}

  Kind kind_;
  int alpha_;
  double gamma_;
};

/// Full parametric specification of the coefficient covariances:
///   f_m(n,n') = sqrt(xi_n xi_n') rho(n-n') lambda_m
///   g_m(n,n') = sqrt(xi_n xi_n') lambda_m / 4 * (rho(n-n'-kappa) - rho(n-n'+kappa))
/// kappa = 0 gives g == 0, a longitudinally reversible process.
struct SpectrumModel {
  XiFamily xi;
  RhoFamily rho;
  LambdaFamily lambda;
  double kappa = 0.0;
};

/// Symmetric coefficient covariance f_m(n, n2); requires n, n2 >= m >= 0.
double f(const SpectrumModel& model, int m, int n, int n2);

/// Antisymmetric cross-covariance g_m(n, n2); requires n, n2 >= m >= 1.
/// (The m = 0 band has no sine terms, so g_0 is never used.)
double g(const SpectrumModel& model, int m, int n, int n2);

/// Relative tolerance for the block eigenvalue test: an assembled block is
/// rejected when an eigenvalue falls below -tol * trace/(2k).
inline constexpr double kPsdTol = 1e-10;

/// Joint covariance block of the order-m cosine and sine coefficient
/// vectors over degrees first_degree..max_degree:
///
///   Gamma_m = [[F, G], [G^T, F]],  F symmetric PSD, G antisymmetric.
///
/// Construction validates the invariants and throws AdmissibilityError if
/// the assembled block is not positive semidefinite within kPsdTol.
class GammaBlock {
 public:
  /// Assembles F and G from the model over degrees order..max_degree.
  GammaBlock(const SpectrumModel& model, int order, int max_degree);

  /// Hand-built blocks; validates the same invariants.
  GammaBlock(int order, int first_degree, Eigen::MatrixXd F, Eigen::MatrixXd G);

  int order() const { return order_; }
  int first_degree() const { return first_degree_; }
  int max_degree() const { return first_degree_ + static_cast<int>(F_.rows()) - 1; }
  const Eigen::MatrixXd& F() const { return F_; }
  const Eigen::MatrixXd& G() const { return G_; }

  /// The 2k x 2k matrix [[F, G], [G^T, F]].
  Eigen::MatrixXd assembled() const;
  /// Smallest eigenvalue of the assembled block (computed at construction).
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  void validate();

  int order_;
  int first_degree_;
  Eigen::MatrixXd F_;
  Eigen::MatrixXd G_;
  double min_eigenvalue_ = 0.0;
};

/// Covariance block of upsilon_m over degrees m..max_degree.
GammaBlock gamma_block(const SpectrumModel& model, int order, int max_degree);

/// Degree horizon for the numerical summability checks.
inline constexpr int kC4CheckDegree = 4096;

enum class C4Branch { general, kronecker };

/// Outcome of the summability test: `passes` reports the applicable
/// sufficient condition (beta > 4 in general; beta > 2 for Kronecker rho;
/// geometric xi decay dominates every polynomial and passes outright).
struct C4Report {
  bool certificate_holds = false;  // xi_n <= r n^{-beta} for n0 < n <= n_check
  bool passes = false;
  std::string reason;
  double variance_sum = 0.0;  // sum_{n <= n_check} xi_n (2n+1)
  int n_check = kC4CheckDegree;
};

C4Report check_c4(const SpectrumModel& model, const DecayCertificate& certificate,
                  C4Branch branch);

}  // namespace axisym
