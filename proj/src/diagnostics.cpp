#include "axisym/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "axisym/parallel.hpp"
#include "axisym/rng.hpp"

namespace axisym {

namespace {

std::size_t find_axis_index(const std::vector<double>& axis, double value,
                            const char* what) {
  for (std::size_t i = 0; i < axis.size(); ++i)
    if (std::fabs(axis[i] - value) <= 1e-12) return i;
  throw std::invalid_argument(std::string("diagnostics: ") + what + " not on the grid");
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

}  // namespace

VariogramEstimate empirical_variogram(std::span<const Realization> realizations,
                                      double colat, double bin_width, double max_lag) {
  if (realizations.empty())
    throw std::invalid_argument("empirical_variogram: empty ensemble");
  const LatLonGrid& grid = realizations.front().grid;
  const std::size_t row = find_axis_index(grid.colats(), colat, "colatitude");
  const std::vector<double>& lons = grid.lons();
  const std::size_t n_lon = lons.size();

  if (bin_width <= 0.0) {
    if (n_lon < 2)
      throw std::invalid_argument("empirical_variogram: need >= 2 longitudes");
    bin_width = lons[1] - lons[0];
  }

  // Circular lag for each unordered pair, binned to the nearest center k*width.
  struct PairBin {
    std::size_t j1, j2, bin;
  };
  std::vector<PairBin> pairs;
  std::size_t n_bins = 0;
  for (std::size_t j1 = 0; j1 < n_lon; ++j1) {
    for (std::size_t j2 = j1 + 1; j2 < n_lon; ++j2) {
      double lag = lons[j2] - lons[j1];
      lag = std::min(lag, kTwoPi - lag);
      if (lag > max_lag + 0.5 * bin_width) continue;
      const std::size_t bin = static_cast<std::size_t>(std::llround(lag / bin_width));
      pairs.push_back({j1, j2, bin});
      n_bins = std::max(n_bins, bin + 1);
    }
  }

  const std::size_t n_reps = realizations.size();
  std::vector<long> count_per_rep(n_bins, 0);
  for (const auto& p : pairs) ++count_per_rep[p.bin];

  // Per-replicate per-bin estimates feed both the mean and the envelopes.
  std::vector<std::vector<double>> per_rep(n_bins);
  for (auto& v : per_rep) v.reserve(n_reps);
  std::vector<double> acc(n_bins);
  for (const Realization& real : realizations) {
    if (&real.grid != &grid && (real.grid.colats() != grid.colats() ||
                                real.grid.lons() != grid.lons()))
      throw std::invalid_argument("empirical_variogram: realizations on different grids");
    std::fill(acc.begin(), acc.end(), 0.0);
    const double* z = real.values.data() + row * n_lon;
    for (const auto& p : pairs) {
      const double d = z[p.j1] - z[p.j2];
      acc[p.bin] += 0.5 * d * d;
    }
    for (std::size_t b = 0; b < n_bins; ++b)
      if (count_per_rep[b] > 0)
        per_rep[b].push_back(acc[b] / static_cast<double>(count_per_rep[b]));
  }

  VariogramEstimate est;
  est.colat = colat;
  est.lags.resize(n_bins);
  est.gamma_hat.assign(n_bins, 0.0);
  est.n_pairs.assign(n_bins, 0);
  est.env_min.assign(n_bins, 0.0);
  est.env_max.assign(n_bins, 0.0);
  est.env_q025.assign(n_bins, 0.0);
  est.env_q975.assign(n_bins, 0.0);
  for (std::size_t b = 0; b < n_bins; ++b) {
    est.lags[b] = static_cast<double>(b) * bin_width;
    est.n_pairs[b] = count_per_rep[b] * static_cast<long>(n_reps);
    if (count_per_rep[b] == 0) continue;
    std::vector<double>& vals = per_rep[b];
    double mean = 0.0;
    for (double v : vals) mean += v;
    est.gamma_hat[b] = mean / static_cast<double>(vals.size());
    std::sort(vals.begin(), vals.end());
    est.env_min[b] = vals.front();
    est.env_max[b] = vals.back();
    est.env_q025[b] = quantile_sorted(vals, 0.025);
    est.env_q975[b] = quantile_sorted(vals, 0.975);
  }
  return est;
}

McCovariance mc_covariance(std::span<const Realization> realizations,
                           const SpherePoint& p1, const SpherePoint& p2) {
  if (realizations.size() < 2)
    throw std::invalid_argument("mc_covariance: need at least 2 replicates");
  const LatLonGrid& grid = realizations.front().grid;
  const std::size_t i1 = find_axis_index(grid.colats(), p1.colat(), "colatitude");
  const std::size_t j1 = find_axis_index(grid.lons(), p1.lon(), "longitude");
  const std::size_t i2 = find_axis_index(grid.colats(), p2.colat(), "colatitude");
  const std::size_t j2 = find_axis_index(grid.lons(), p2.lon(), "longitude");

  const std::size_t R = realizations.size();
  double mean1 = 0.0, mean2 = 0.0;
  for (const Realization& r : realizations) {
    mean1 += r.at(i1, j1);
    mean2 += r.at(i2, j2);
  }
  mean1 /= static_cast<double>(R);
  mean2 /= static_cast<double>(R);

  double sum_w = 0.0, sum_w2 = 0.0;
  for (const Realization& r : realizations) {
    const double w = (r.at(i1, j1) - mean1) * (r.at(i2, j2) - mean2);
    sum_w += w;
    sum_w2 += w * w;
  }
  McCovariance out;
  out.n_reps = static_cast<int>(R);
  out.estimate = sum_w / static_cast<double>(R - 1);
  const double mean_w = sum_w / static_cast<double>(R);
  const double var_w = (sum_w2 - static_cast<double>(R) * mean_w * mean_w) /
                       static_cast<double>(R - 1);
  out.std_error = std::sqrt(std::max(var_w, 0.0) / static_cast<double>(R));
  return out;
}

ConvergenceStudy convergence_study(const SpectrumModel& model, int n_ref,
                                   const std::vector<int>& truncations,
                                   const LatLonGrid& grid, int n_reps,
                                   std::uint64_t base_seed, int threads) {
  if (truncations.empty())
    throw std::invalid_argument("convergence_study: no truncations");
  for (std::size_t i = 0; i < truncations.size(); ++i) {
    if (truncations[i] >= n_ref)
      throw std::invalid_argument("convergence_study: truncations must stay below n_ref");
    if (i > 0 && truncations[i] <= truncations[i - 1])
      throw std::invalid_argument("convergence_study: truncations must increase");
  }
  if (n_reps < 1) throw std::invalid_argument("convergence_study: n_reps must be >= 1");

  const std::size_t n_vals = grid.size();
  std::vector<std::vector<double>> per_rep(static_cast<std::size_t>(n_reps),
                                           std::vector<double>(truncations.size(), 0.0));
  parallel_for(static_cast<std::size_t>(n_reps), threads, [&](std::size_t r) {
    const auto draw = draw_coefficients(
        model, n_ref, rng::replicate_seed(base_seed, static_cast<std::uint64_t>(r)));
    const Realization ref = synthesize(draw, grid, 1);
    for (std::size_t t = 0; t < truncations.size(); ++t) {
      const Realization part = synthesize_truncated(draw, grid, truncations[t], 1);
      double worst = 0.0;
      for (std::size_t i = 0; i < n_vals; ++i) {
        const double d = part.values[i] - ref.values[i];
        worst = std::max(worst, d * d);
      }
      per_rep[r][t] = worst;
    }
  });

  ConvergenceStudy study;
  study.truncations = truncations;
  study.errors.assign(truncations.size(), 0.0);
  for (int r = 0; r < n_reps; ++r)
    for (std::size_t t = 0; t < truncations.size(); ++t)
      study.errors[t] += per_rep[static_cast<std::size_t>(r)][t];
  for (double& e : study.errors) e /= static_cast<double>(n_reps);

  // OLS slope of log(error) on log(N).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(truncations.size());
  for (std::size_t t = 0; t < truncations.size(); ++t) {
    const double x = std::log(static_cast<double>(truncations[t]));
    const double y = std::log(study.errors[t]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  study.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return study;
}

double l2_error_theoretical(const SpectrumModel& model, int truncation, int n_max) {
  if (truncation < 0 || n_max <= truncation)
    throw std::invalid_argument("l2_error_theoretical: requires 0 <= N < n_max");
  const auto support = model.lambda.max_nonzero_order();
  double acc = 0.0;
  for (int n = truncation + 1; n <= n_max; ++n) {
    double inner = f(model, 0, n, n);
    const int m_top = support ? std::min(*support, n) : n;
    for (int m = 1; m <= m_top; ++m) inner += 2.0 * f(model, m, n, n);
    acc += inner;
  }
  return acc;
}

}  // namespace axisym
