#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "axisym/spectrum.hpp"
#include "axisym/sphere_geom.hpp"

namespace axisym {

/// One sampled coefficient set {a_nm, b_nm} for 0 <= m <= n <= N, stored
/// as per-order blocks: for each m the a-values over n = m..N, then (for
/// m >= 1) the b-values. b_n0 is never sampled: the expansion contains no
/// sin(0 * lon) term, so it cannot affect the process.
///
/// Coefficient covariance (independent across orders):
///   cov{a_n0, a_n'0}  = f_0(n,n')
///   cov{a_nm, a_n'm}  = cov{b_nm, b_n'm} = f_m(n,n')/2   (m >= 1)
///   cov{a_nm, b_n'm}  = g_m(n,n')/2                      (m >= 1)
/// The unhalved m = 0 variance is load-bearing for variance correctness.
class CoefficientDraw {
 public:
  CoefficientDraw(SpectrumModel model, int truncation, std::uint64_t seed,
                  std::vector<double> packed);

  int truncation() const { return truncation_; }
  std::uint64_t seed() const { return seed_; }
  const SpectrumModel& model() const { return model_; }

  double a(int n, int m) const;  // 0 <= m <= n <= N
  double b(int n, int m) const;  // 1 <= m <= n <= N

  /// Offset of the order-m block inside the packed vector.
  std::size_t block_offset(int m) const;

 private:
  SpectrumModel model_;
  int truncation_;
  std::uint64_t seed_;
  std::vector<double> packed_;  // (N+1)^2 values
};

/// Samples one coefficient set. Each order m owns an independent stream
/// seeded by rng::block_seed(seed, m); the order-m vector (a, b) is
/// upsilon = L z with L a positive-semidefinite Cholesky factor of the
/// block covariance. With Kronecker rho and vanishing g the factor is
/// diagonal and the general and specialized paths coincide bit for bit.
/// Deterministic given (model, truncation, seed).
CoefficientDraw draw_coefficients(const SpectrumModel& model, int truncation,
                                  std::uint64_t seed);

namespace detail {

/// force_general bypasses the diagonal fast path so tests can compare
/// the two sampling routes on one seed stream.
CoefficientDraw draw_coefficients_impl(const SpectrumModel& model, int truncation,
                                       std::uint64_t seed, bool force_general);

}  // namespace detail

/// Field values on a colatitude x longitude grid, row-major over
/// (colat, lon), along with everything needed to reproduce them.
struct Realization {
  LatLonGrid grid;
  std::vector<double> values;
  std::uint64_t seed = 0;
  int truncation = 0;
  SpectrumModel model;

  double at(std::size_t i_colat, std::size_t j_lon) const {
    return values[i_colat * grid.n_lon() + j_lon];
  }
};

/// Evaluates the truncated expansion at every grid point:
/// per colatitude A_m = sum_n a_nm Ptilde_nm and B_m = sum_n b_nm Ptilde_nm,
/// then Z = A_0 + 2 sum_m (A_m cos(m lon) + B_m sin(m lon)) per longitude.
/// Colatitude rows are independent, the natural parallel axis.
Realization synthesize(const CoefficientDraw& draw, const LatLonGrid& grid,
                       int threads = 1);

/// Same, truncating both sums at effective_truncation <= draw.truncation():
/// the partial sums of one draw are exactly the nested lower-degree fields.
Realization synthesize_truncated(const CoefficientDraw& draw, const LatLonGrid& grid,
                                 int effective_truncation, int threads = 1);

/// n_reps independent realizations; replicate i uses
/// rng::replicate_seed(base_seed, i), so the output is identical for any
/// thread count or evaluation order.
std::vector<Realization> ensemble(const SpectrumModel& model, int truncation,
                                  const LatLonGrid& grid, int n_reps,
                                  std::uint64_t base_seed, int threads = 1);

/// Streaming variant: fn(replicate_index, realization) is invoked from the
/// calling thread in replicate order; synthesis may still use threads.
void for_each_realization(const SpectrumModel& model, int truncation,
                          const LatLonGrid& grid, int n_reps, std::uint64_t base_seed,
                          int threads,
                          const std::function<void(int, const Realization&)>& fn);

}  // namespace axisym
