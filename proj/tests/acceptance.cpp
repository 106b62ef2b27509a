// Acceptance suite: one pass/fail line per criterion, exit code = number
// of failed criteria. Intentionally a plain binary (not doctest) so the
// output reads as a checklist; run it through ctest or directly:
//   ./acceptance [--only K] [--threads T]

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "axisym/commands.hpp"
#include "axisym/covariance.hpp"
#include "axisym/diagnostics.hpp"
#include "axisym/legendre.hpp"
#include "axisym/rng.hpp"
#include "axisym/sampler.hpp"

using namespace axisym;
namespace fs = std::filesystem;

namespace {

int g_threads = 2;
int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::ostringstream line;
  line << "[" << (id < 10 ? " " : "") << id << "] " << (pass ? "PASS" : "FAIL") << "  "
       << name;
  if (!detail.empty()) line << ": " << detail;
  std::cout << line.str() << std::endl;
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << std::scientific << v;
  return out.str();
}

SpectrumModel example1_model(int alpha, double kappa = 0.0) {
  return SpectrumModel{XiFamily::legendre_matern(100.0, 1.5), RhoFamily::kronecker(),
                       LambdaFamily::indicator(alpha), kappa};
}

SpherePoint random_point(std::mt19937_64& eng) {
  std::uniform_real_distribution<double> ucolat(0.0, kPi);
  std::uniform_real_distribution<double> ulon(0.0, kTwoPi);
  double lon = ulon(eng);
  if (lon >= kTwoPi) lon = 0.0;
  return SpherePoint(ucolat(eng), lon);
}

// --- 1. addition theorem ---------------------------------------------------

void criterion_1() {
  std::mt19937_64 eng(101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SpherePoint p1 = random_point(eng), p2 = random_point(eng);
    for (int n = 0; n <= 30; ++n)
      worst = std::max(worst, addition_theorem_check(n, p1, p2));
  }
  report(1, "addition theorem residual, n <= 30, 1000 pairs", worst <= 1e-10,
         "max residual " + fmt(worst) + " (tol 1e-10)");
}

// --- 2. orthonormality under Gauss-Legendre quadrature ---------------------

void criterion_2() {
  const int N = 20;
  const GaussLegendreRule rule = gauss_legendre(2 * N + 1);
  std::vector<LegendreTable> tables;
  for (double x : rule.nodes) tables.push_back(ptilde_table(N, x));
  double worst = 0.0;
  for (int n = 0; n <= N; ++n) {
    for (int n2 = 0; n2 <= N; ++n2) {
      for (int m = 0; m <= std::min(n, n2); ++m) {
        double quad = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
          quad += rule.weights[i] * tables[i](n, m) * tables[i](n2, m);
        const double exact = n == n2 ? 1.0 / kTwoPi : 0.0;
        worst = std::max(worst, std::fabs(quad - exact));
      }
    }
  }
  report(2, "normalized-polynomial orthogonality via quadrature", worst <= 1e-10,
         "max deviation from delta/(2 pi): " + fmt(worst) + " (tol 1e-10)");
}

// --- 3. isotropy equivalence ------------------------------------------------

void criterion_3() {
  const SpectrumModel model{XiFamily::multiquadric(0.7), RhoFamily::kronecker(),
                            LambdaFamily::ones(), 0.0};
  const CovarianceSpec spec{model, 30};
  std::mt19937_64 eng(103);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const SpherePoint p1 = random_point(eng), p2 = random_point(eng);
    const double axisym_route = cov(spec, p1, p2);
    const double schoenberg_route =
        cov_isotropic(model.xi, 30, great_circle_distance(p1, p2));
    worst = std::max(worst, std::fabs(axisym_route - schoenberg_route));
  }
  report(3, "isotropy limit: series equals Schoenberg form", worst <= 1e-10,
         "max gap " + fmt(worst) + " over 200 pairs (tol 1e-10)");
}

// --- 4. limit behaviors -----------------------------------------------------

void criterion_4() {
  // (a) longitudinal independence: constant along parallels
  const auto draw = draw_coefficients(example1_model(0), 50, 404);
  const Realization real = synthesize(draw, uniform_grid(16, 32), g_threads);
  double spread = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    double lo = real.at(i, 0), hi = real.at(i, 0);
    for (std::size_t j = 1; j < 32; ++j) {
      lo = std::min(lo, real.at(i, j));
      hi = std::max(hi, real.at(i, j));
    }
    spread = std::max(spread, hi - lo);
  }

  // (b) reversible model symmetric in the longitude difference
  const CovarianceSpec rev{example1_model(8, 0.0), 20};
  double sym_gap = 0.0;
  for (double l1 : {kPi / 3, kPi / 2, 2 * kPi / 3})
    for (double l2 : {l1 - 0.2, l1 - 0.05, l1, l1 + 0.05, l1 + 0.2})
      for (double dl : {0.02, 0.1, 0.2, 0.5})
        sym_gap = std::max(sym_gap, std::fabs(cov(rev, l1, l2, dl) - cov(rev, l1, l2, -dl)));

  // (c) +kappa and -kappa panels are mirror images
  const CovarianceSpec plus{example1_model(8, 1.0), 20};
  const CovarianceSpec minus{example1_model(8, -1.0), 20};
  double mirror_gap = 0.0;
  double asym = 0.0;  // the +kappa panel itself must be visibly asymmetric
  for (int i = 0; i <= 20; ++i) {
    const double l2 = kPi / 2 - 0.2 + 0.02 * i;
    for (int j = 0; j <= 20; ++j) {
      const double dl = -0.2 + 0.02 * j;
      const double cp = cov(plus, kPi / 2, l2, dl);
      const double cm = cov(minus, kPi / 2, l2, -dl);
      mirror_gap = std::max(mirror_gap, std::fabs(cp - cm));
      asym = std::max(asym, std::fabs(cp - cov(plus, kPi / 2, l2, -dl)));
    }
  }

  const bool pass = spread <= 1e-12 && sym_gap <= 1e-12 && mirror_gap <= 1e-15 && asym > 0.0;
  report(4, "limit behaviors (independence, reversibility, mirrored panels)", pass,
         "parallel spread " + fmt(spread) + ", kappa=0 asymmetry " + fmt(sym_gap) +
             ", mirror gap " + fmt(mirror_gap) + ", kappa=1 asymmetry " + fmt(asym));
}

// --- 5. end-to-end second-order correctness ---------------------------------

void criterion_5() {
  SpectrumModel model = example1_model(8, 1.0);
  model.rho = RhoFamily::exponential(1.0);
  const int N = 10;
  const CovarianceSpec spec{model, N};
  const LatLonGrid grid = uniform_grid(4, 6);
  const int reps = 20000;

  std::vector<Realization> reals;
  reals.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    const auto draw =
        draw_coefficients(model, N, rng::replicate_seed(505, static_cast<std::uint64_t>(r)));
    reals.push_back(synthesize(draw, grid, 1));
  }

  const std::pair<std::pair<int, int>, std::pair<int, int>> pairs[10] = {
      {{0, 0}, {0, 0}}, {{1, 1}, {1, 1}}, {{2, 3}, {2, 3}}, {{0, 0}, {0, 3}},
      {{1, 0}, {1, 2}}, {{0, 1}, {1, 1}}, {{1, 4}, {2, 1}}, {{2, 0}, {3, 5}},
      {{0, 2}, {3, 2}}, {{3, 1}, {3, 4}}};
  int exceed = 0;
  double worst_ratio = 0.0;
  for (const auto& [pi, pj] : pairs) {
    double mean = 0.0;
    std::vector<double> w(reps);
    for (int r = 0; r < reps; ++r) {
      w[r] = reals[r].at(pi.first, pi.second) * reals[r].at(pj.first, pj.second);
      mean += w[r];
    }
    mean /= reps;
    double var = 0.0;
    for (double v : w) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / (reps - 1.0) / reps);
    const double theory = cov(spec, grid.colats()[pi.first], grid.colats()[pj.first],
                              grid.lons()[pi.second] - grid.lons()[pj.second]);
    const double ratio = std::fabs(mean - theory) / se;
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio > 4.0) ++exceed;
  }
  report(5, "sampled fields reproduce the covariance (20000 reps, 10 pairs)", exceed == 0,
         "worst |empirical-theory|/SE = " + fmt(worst_ratio) + " (limit 4)");
}

// --- 6. coefficient covariance conditions ------------------------------------

void criterion_6() {
  SpectrumModel model = example1_model(8, 1.0);
  model.rho = RhoFamily::exponential(1.0);
  const int N = 10;
  const int reps = 20000;
  std::vector<CoefficientDraw> draws;
  draws.reserve(reps);
  for (int r = 0; r < reps; ++r)
    draws.push_back(
        draw_coefficients(model, N, rng::replicate_seed(606, static_cast<std::uint64_t>(r))));

  int exceed = 0, tested = 0;
  double worst_ratio = 0.0;
  std::vector<double> w(reps);
  auto check = [&](double theory, auto&& product) {
    double mean = 0.0;
    for (int r = 0; r < reps; ++r) {
      w[r] = product(draws[r]);
      mean += w[r];
    }
    mean /= reps;
    double var = 0.0;
    for (double v : w) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / (reps - 1.0) / reps);
    const double gap = std::fabs(mean - theory);
    ++tested;
    if (se == 0.0) {
      if (gap > 0.0) ++exceed;
      return;
    }
    worst_ratio = std::max(worst_ratio, gap / se);
    if (gap > 4.0 * se) ++exceed;
  };

  for (int m = 0; m <= N; ++m) {
    const double half = m == 0 ? 1.0 : 0.5;
    for (int n = m; n <= N; ++n) {
      for (int n2 = n; n2 <= N; ++n2) {
        check(f(model, m, n, n2) * half,
              [&](const CoefficientDraw& d) { return d.a(n, m) * d.a(n2, m); });
        if (m >= 1)
          check(f(model, m, n, n2) * half,
                [&](const CoefficientDraw& d) { return d.b(n, m) * d.b(n2, m); });
      }
      if (m >= 1)
        for (int n2 = m; n2 <= N; ++n2)  // includes the zero diagonal n2 = n
          check(g(model, m, n, n2) / 2.0,
                [&](const CoefficientDraw& d) { return d.a(n, m) * d.b(n2, m); });
    }
  }
  report(6, "coefficient covariances match f, f/2, g/2 (20000 draws)", exceed == 0,
         std::to_string(tested) + " moments, worst |gap|/SE = " + fmt(worst_ratio) +
             " (limit 4)");
}

// --- 7. convergence rate ------------------------------------------------------

void criterion_7() {
  const SpectrumModel model = example1_model(10);
  const LatLonGrid grid = uniform_grid(64, 64);
  const ConvergenceStudy study =
      convergence_study(model, 512, {16, 32, 64, 128}, grid, 200, 707, g_threads);
  const bool pass = study.fitted_slope >= -2.25 && study.fitted_slope <= -1.75;
  std::ostringstream detail;
  detail << "fitted slope " << study.fitted_slope << " in [-2.25, -1.75], errors";
  for (double e : study.errors) detail << " " << fmt(e);
  report(7, "truncation-error decay rate (200 reps, n_ref = 512)", pass, detail.str());
}

// --- 8. variogram reproduction -------------------------------------------------

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
    return r;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

void criterion_8() {
  const SpectrumModel model = example1_model(10);
  const int N = 200;
  const int reps = 500;
  const std::vector<double> parallels = {kPi / 5, 2 * kPi / 5, 3 * kPi / 5, 4 * kPi / 5};
  std::vector<double> lons(250);
  for (std::size_t j = 0; j < lons.size(); ++j)
    lons[j] = static_cast<double>(j) * kTwoPi / static_cast<double>(lons.size());
  const LatLonGrid grid(parallels, lons);
  const auto reals = ensemble(model, N, grid, reps, 808, g_threads);

  const CovarianceSpec spec{model, N};
  double worst_rel = 0.0;
  double worst_spearman = 1.0;
  for (double colat : parallels) {
    const VariogramEstimate est = empirical_variogram(reals, colat, 0.0, kPi / 2);
    const double sill = cov(spec, colat, colat, 0.0);
    std::vector<double> widths, lags;
    for (std::size_t b = 1; b < est.lags.size(); ++b) {
      if (est.n_pairs[b] == 0) continue;
      const double theory = variogram(spec, colat, est.lags[b]);
      if (theory > 0.1 * sill)
        worst_rel = std::max(worst_rel, std::fabs(est.gamma_hat[b] - theory) / theory);
      widths.push_back(est.env_q975[b] - est.env_q025[b]);
      lags.push_back(est.lags[b]);
    }
    worst_spearman = std::min(worst_spearman, spearman_rho(lags, widths));
  }
  const bool pass = worst_rel <= 0.10 && worst_spearman > 0.0;
  report(8, "variogram reproduction at 4 parallels (500 reps)", pass,
         "worst relative gap " + fmt(worst_rel) + " (limit 0.10), min envelope Spearman " +
             fmt(worst_spearman) + " (> 0)");
}

// --- 9. truncation error independent of the antisymmetric part -----------------

void criterion_9() {
  const SpectrumModel rev = example1_model(8, 0.0);
  const SpectrumModel irrev = example1_model(8, 1.0);
  bool equal = true;
  for (int N : {5, 10, 50, 200})
    equal = equal && l2_error_theoretical(rev, N, 1000) ==
                         l2_error_theoretical(irrev, N, 1000);
  report(9, "theoretical truncation error identical for kappa = 0 and 1", equal,
         equal ? "exact equality at N in {5, 10, 50, 200}" : "values differ");
}

// --- 10. determinism end to end -------------------------------------------------

void criterion_10() {
  const fs::path tmp = fs::temp_directory_path() / "axisym_acceptance_det";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  std::ostringstream cfg;
  cfg << "[model]\nxi = legendre_matern\ntau2 = 100\nnu = 1.5\nrho = kronecker\n"
         "lambda = indicator\nalpha = 8\nkappa = 1\n\n"
         "[run]\ntruncation = 40\nn_colat = 24\nn_lon = 48\nseed = 20240917\nn_reps = 2\n\n"
         "[output]\ndirectory = "
      << (tmp / "a").string() << "\nformat = binary\n";
  const fs::path cfg_path = tmp / "det.ini";
  std::ofstream(cfg_path) << cfg.str();

  std::ostringstream log;
  bool pass = cmd_simulate(CommandOptions{.config_path = cfg_path.string(),
                                          .threads = g_threads},
                           log) == kExitOk;
  pass = pass && cmd_simulate(CommandOptions{.config_path = cfg_path.string(),
                                             .out_dir = (tmp / "b").string(),
                                             .threads = g_threads},
                              log) == kExitOk;
  std::size_t bytes = 0;
  for (const char* name : {"realization_0000.bin", "realization_0001.bin"}) {
    std::ifstream fa(tmp / "a" / name, std::ios::binary);
    std::ifstream fb(tmp / "b" / name, std::ios::binary);
    std::ostringstream ba, bb;
    ba << fa.rdbuf();
    bb << fb.rdbuf();
    pass = pass && !ba.str().empty() && ba.str() == bb.str();
    bytes += ba.str().size();
  }
  fs::remove_all(tmp);
  report(10, "identical config + seed reproduce outputs bitwise, twice", pass,
         std::to_string(bytes) + " bytes compared");
}

// --- 11. admissibility gate ------------------------------------------------------

void criterion_11() {
  std::mt19937_64 eng(111);
  std::uniform_real_distribution<double> ukappa(-2.0, 2.0);
  std::uniform_real_distribution<double> u01(0.05, 0.95);
  int passed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const XiFamily xi = trial % 2 == 0
                            ? XiFamily::multiquadric(u01(eng))
                            : XiFamily::legendre_matern(1.0 + 99.0 * u01(eng),
                                                        0.6 + 2.0 * u01(eng));
    const RhoFamily rho = trial % 3 == 0 ? RhoFamily::kronecker()
                                         : RhoFamily::exponential(0.2 + 2.0 * u01(eng));
    const LambdaFamily lambda =
        trial % 4 == 0
            ? LambdaFamily::ones()
            : (trial % 4 == 1 ? LambdaFamily::indicator(static_cast<int>(eng() % 12))
                              : LambdaFamily::rational(2.0 * u01(eng)));
    const SpectrumModel model{xi, rho, lambda, ukappa(eng)};
    bool ok = true;
    try {
      for (int m = 0; m <= 10; ++m) gamma_block(model, m, 30);
    } catch (const AdmissibilityError&) {
      ok = false;
    }
    if (ok) ++passed;
  }

  // Hand-built inadmissible pairing: diagonal F from a custom xi with a
  // large antisymmetric G drives the block eigenvalues negative.
  const XiFamily xi = XiFamily::custom({1.0, 1.0, 1.0});
  const SpectrumModel flat{xi, RhoFamily::kronecker(), LambdaFamily::ones(), 0.0};
  Eigen::MatrixXd F(2, 2), G(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) F(i, j) = f(flat, 1, 1 + i, 1 + j);
  G << 0.0, 10.0, -10.0, 0.0;
  bool rejected = false;
  int named_order = -1;
  try {
    GammaBlock(1, 1, F, G);
  } catch (const AdmissibilityError& e) {
    rejected = true;
    named_order = e.order();
  }

  const bool pass = passed == 50 && rejected && named_order == 1;
  report(11, "block PSD gate: 50 admissible models pass, bad block rejected", pass,
         std::to_string(passed) + "/50 random models pass; hand-built block " +
             (rejected ? "rejected naming m=" + std::to_string(named_order)
                       : "NOT rejected"));
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
      g_threads = std::atoi(argv[++i]);
  }
  using Fn = void (*)();
  const Fn criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                         criterion_5, criterion_6, criterion_7, criterion_8,
                         criterion_9, criterion_10, criterion_11};
  for (int k = 1; k <= 11; ++k) {
    if (only != 0 && only != k) continue;
    criteria[k - 1]();
  }
  if (g_failures == 0)
    std::cout << "acceptance: all criteria passed" << std::endl;
  else
    std::cout << "acceptance: " << g_failures << " criteria FAILED" << std::endl;
  return g_failures;
}
