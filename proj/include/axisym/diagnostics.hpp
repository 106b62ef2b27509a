#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "axisym/sampler.hpp"
#include "axisym/spectrum.hpp"
#include "axisym/sphere_geom.hpp"

namespace axisym {

/// Method-of-moments local variogram along one parallel, pooled over an
/// ensemble. Envelopes are computed across the per-replicate estimates;
/// both the min/max and the 2.5%/97.5% quantile envelopes are reported.
/// Bins with no pairs keep n_pairs = 0 and are excluded from comparisons.
struct VariogramEstimate {
  double colat = 0.0;
  std::vector<double> lags;        // bin centers (radians along the parallel)
  std::vector<double> gamma_hat;   // mean over replicates
  std::vector<long> n_pairs;       // total pairs per bin across replicates
  std::vector<double> env_min;
  std::vector<double> env_max;
  std::vector<double> env_q025;
  std::vector<double> env_q975;
};

/// Matheron estimator gamma_hat(dl) = mean of (Z(L, l+dl) - Z(L, l))^2 / 2
/// over replicates and point pairs, binned by the circular longitude lag.
/// bin_width <= 0 selects the grid longitude spacing. All realizations
/// must share one grid containing the requested colatitude.
VariogramEstimate empirical_variogram(std::span<const Realization> realizations,
                                      double colat, double bin_width = 0.0,
                                      double max_lag = kPi);

struct McCovariance {
  double estimate = 0.0;
  double std_error = 0.0;
  int n_reps = 0;
};

/// Sample covariance across replicates between two grid points, with the
/// empirical standard error sd(products)/sqrt(R). Needs >= 2 replicates.
McCovariance mc_covariance(std::span<const Realization> realizations,
                           const SpherePoint& p1, const SpherePoint& p2);

/// Truncation-error decay experiment. The per-replicate error statistic
/// at truncation N is the maximum over grid points of the squared
/// deviation between the nested partial field and the reference field,
/// the grid analogue of the squared L2 norm; its decay rate matches the
/// -(beta-2) theory. Errors are means over replicates; the slope is an
/// unweighted least-squares fit on (log N, log error).
struct ConvergenceStudy {
  std::vector<int> truncations;
  std::vector<double> errors;
  double fitted_slope = 0.0;
};

/// Runs the study with a single coefficient stream per replicate drawn at
/// n_ref, so every truncated field is an exact partial sum of the
/// reference (nested truncation). Requires max(truncations) < n_ref.
ConvergenceStudy convergence_study(const SpectrumModel& model, int n_ref,
                                   const std::vector<int>& truncations,
                                   const LatLonGrid& grid, int n_reps,
                                   std::uint64_t base_seed, int threads = 1);

/// Exact series tail sum_{n=N+1}^{n_max} [f_0(n,n) + 2 sum_{m=1}^n f_m(n,n)],
/// the squared L2(Omega x S^2) truncation error up to the tail horizon.
/// Depends on f only, never on kappa.
double l2_error_theoretical(const SpectrumModel& model, int truncation, int n_max);

}  // namespace axisym
