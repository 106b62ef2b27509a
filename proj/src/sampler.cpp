#include "axisym/sampler.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "axisym/legendre.hpp"
#include "axisym/linalg.hpp"
#include "axisym/parallel.hpp"
#include "axisym/rng.hpp"

namespace axisym {

namespace {

std::size_t packed_size(int truncation) {
  const std::size_t np1 = static_cast<std::size_t>(truncation) + 1;
  return np1 * np1;
}

}  // namespace

CoefficientDraw::CoefficientDraw(SpectrumModel model, int truncation, std::uint64_t seed,
                                 std::vector<double> packed)
    : model_(std::move(model)), truncation_(truncation), seed_(seed),
      packed_(std::move(packed)) {
  if (truncation_ < 0) throw std::invalid_argument("CoefficientDraw: negative truncation");
  if (packed_.size() != packed_size(truncation_))
    throw std::invalid_argument("CoefficientDraw: packed size mismatch");
  for (double v : packed_)
    if (!std::isfinite(v)) throw std::invalid_argument("CoefficientDraw: non-finite value");
}

std::size_t CoefficientDraw::block_offset(int m) const {
  // Block m holds k = N-m+1 a-values followed (m >= 1) by k b-values.
  // offset(0) = 0, offset(m) = (N+1) + sum_{j=1}^{m-1} 2 (N-j+1).
  const std::size_t N = static_cast<std::size_t>(truncation_);
  if (m == 0) return 0;
  const std::size_t j = static_cast<std::size_t>(m) - 1;
  return (N + 1) + j * (2 * N + 2) - j * (j + 1);
}

double CoefficientDraw::a(int n, int m) const {
  assert(m >= 0 && n >= m && n <= truncation_);
  return packed_[block_offset(m) + static_cast<std::size_t>(n - m)];
}

double CoefficientDraw::b(int n, int m) const {
  assert(m >= 1 && n >= m && n <= truncation_);
  const std::size_t k = static_cast<std::size_t>(truncation_ - m) + 1;
  return packed_[block_offset(m) + k + static_cast<std::size_t>(n - m)];
}

CoefficientDraw draw_coefficients(const SpectrumModel& model, int truncation,
                                  std::uint64_t seed) {
  return detail::draw_coefficients_impl(model, truncation, seed, false);
}

CoefficientDraw detail::draw_coefficients_impl(const SpectrumModel& model, int truncation,
                                               std::uint64_t seed, bool force_general) {
  if (truncation < 0) throw std::invalid_argument("draw_coefficients: negative truncation");
  const int N = truncation;
  std::vector<double> packed(packed_size(N), 0.0);

  std::size_t offset = 0;
  for (int m = 0; m <= N; ++m) {
    const int k = N - m + 1;
    const std::size_t block = static_cast<std::size_t>(m == 0 ? k : 2 * k);
    const double lam = model.lambda(m);
    if (lam == 0.0) {
      offset += block;
      continue;
    }
    rng::GaussianStream zs(rng::block_seed(seed, static_cast<std::uint64_t>(m)));
    const double half = m == 0 ? 1.0 : 0.5;

    const bool diagonal = !force_general && model.rho.is_kronecker() &&
                          (m == 0 || model.kappa == 0.0 ||
                           model.kappa != std::nearbyint(model.kappa));
    if (diagonal) {
      // Gamma_m is diagonal: a_nm = sqrt(f_m(n,n) h) z, likewise b.
      for (int n = m; n <= N; ++n)
        packed[offset + (n - m)] = std::sqrt(f(model, m, n, n) * half) * zs.next();
      if (m >= 1)
        for (int n = m; n <= N; ++n)
          packed[offset + k + (n - m)] = std::sqrt(f(model, m, n, n) * half) * zs.next();
    } else {
      const Eigen::Index d = static_cast<Eigen::Index>(block);
      Eigen::MatrixXd cov_m(d, d);
      if (m == 0) {
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) cov_m(i, j) = f(model, 0, i, j);
      } else {
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            const double fij = f(model, m, m + i, m + j) * 0.5;
            const double gij = g(model, m, m + i, m + j) * 0.5;
            cov_m(i, j) = fij;
            cov_m(k + i, k + j) = fij;
            cov_m(i, k + j) = gij;
            cov_m(k + i, j) = -gij;
          }
        }
      }
      const Eigen::MatrixXd L = psd_cholesky_jittered(cov_m, kPsdTol, m);
      Eigen::VectorXd z(d);
      for (Eigen::Index i = 0; i < d; ++i) z(i) = zs.next();
      const Eigen::VectorXd upsilon = L * z;
      for (Eigen::Index i = 0; i < d; ++i) packed[offset + i] = upsilon(i);
    }
    offset += block;
  }
  return CoefficientDraw(model, N, seed, std::move(packed));
}

namespace {

Realization synthesize_impl(const CoefficientDraw& draw, const LatLonGrid& grid,
                            int effective_truncation, int threads) {
  const int N = effective_truncation;
  if (N < 0 || N > draw.truncation())
    throw std::invalid_argument("synthesize: effective truncation outside [0, draw N]");
  const std::size_t n_colat = grid.n_colat();
  const std::size_t n_lon = grid.n_lon();

  // cos(m lon_j), sin(m lon_j), shared by every colatitude row.
  std::vector<double> cos_tab(static_cast<std::size_t>(N + 1) * n_lon);
  std::vector<double> sin_tab(static_cast<std::size_t>(N + 1) * n_lon);
  for (int m = 0; m <= N; ++m) {
    for (std::size_t j = 0; j < n_lon; ++j) {
      cos_tab[static_cast<std::size_t>(m) * n_lon + j] = std::cos(m * grid.lons()[j]);
      sin_tab[static_cast<std::size_t>(m) * n_lon + j] = std::sin(m * grid.lons()[j]);
    }
  }

  std::vector<double> values(n_colat * n_lon, 0.0);
  parallel_for(n_colat, threads, [&](std::size_t i) {
    const LegendreTable table(N, std::cos(grid.colats()[i]));
    std::vector<double> am(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> bm(static_cast<std::size_t>(N) + 1, 0.0);
    for (int m = 0; m <= N; ++m) {
      double sa = 0.0, sb = 0.0;
      for (int n = m; n <= N; ++n) {
        sa += draw.a(n, m) * table(n, m);
        if (m >= 1) sb += draw.b(n, m) * table(n, m);
      }
      am[m] = sa;
      bm[m] = sb;
    }
    double* row = values.data() + i * n_lon;
    for (std::size_t j = 0; j < n_lon; ++j) row[j] = am[0];
    for (int m = 1; m <= N; ++m) {
      const double* ct = cos_tab.data() + static_cast<std::size_t>(m) * n_lon;
      const double* st = sin_tab.data() + static_cast<std::size_t>(m) * n_lon;
      const double a2 = 2.0 * am[m], b2 = 2.0 * bm[m];
      if (a2 == 0.0 && b2 == 0.0) continue;
      for (std::size_t j = 0; j < n_lon; ++j) row[j] += a2 * ct[j] + b2 * st[j];
    }
  });

  return Realization{grid, std::move(values), draw.seed(), N, draw.model()};
}

}  // namespace

Realization synthesize(const CoefficientDraw& draw, const LatLonGrid& grid, int threads) {
  return synthesize_impl(draw, grid, draw.truncation(), threads);
}

Realization synthesize_truncated(const CoefficientDraw& draw, const LatLonGrid& grid,
                                 int effective_truncation, int threads) {
  return synthesize_impl(draw, grid, effective_truncation, threads);
}

std::vector<Realization> ensemble(const SpectrumModel& model, int truncation,
                                  const LatLonGrid& grid, int n_reps,
                                  std::uint64_t base_seed, int threads) {
  if (n_reps < 1) throw std::invalid_argument("ensemble: n_reps must be >= 1");
  std::vector<Realization> out;
  out.reserve(static_cast<std::size_t>(n_reps));
  for (int r = 0; r < n_reps; ++r) {
    const auto draw = draw_coefficients(
        model, truncation, rng::replicate_seed(base_seed, static_cast<std::uint64_t>(r)));
    out.push_back(synthesize(draw, grid, threads));
  }
  return out;
}

void for_each_realization(const SpectrumModel& model, int truncation,
                          const LatLonGrid& grid, int n_reps, std::uint64_t base_seed,
                          int threads,
                          const std::function<void(int, const Realization&)>& fn) {
  if (n_reps < 1) throw std::invalid_argument("for_each_realization: n_reps must be >= 1");
  for (int r = 0; r < n_reps; ++r) {
    const auto draw = draw_coefficients(
        model, truncation, rng::replicate_seed(base_seed, static_cast<std::uint64_t>(r)));
    const Realization real = synthesize(draw, grid, threads);
    fn(r, real);
  }
}

}  // namespace axisym
