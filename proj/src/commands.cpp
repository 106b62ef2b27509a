#include "axisym/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "axisym/covariance.hpp"
#include "axisym/diagnostics.hpp"
#include "axisym/io.hpp"
#include "axisym/rng.hpp"
#include "axisym/sampler.hpp"
#include "axisym/version.hpp"

namespace axisym {

namespace {

namespace fs = std::filesystem;

RunConfig load_with_overrides(const CommandOptions& options) {
  RunConfig config = load_config(options.config_path);
  if (options.seed) config.run.seed = *options.seed;
  if (options.out_dir) config.output.directory = *options.out_dir;
  return config;
}

DecayCertificate effective_certificate(const RunConfig& config) {
  if (config.decay) return *config.decay;
  if (auto cert = config.model.xi.default_certificate()) return *cert;
  return DecayCertificate{};  // beta = 0 never certifies; check_c4 reports it
}

/// Summability + PSD probe guarding the sampling commands. The probe
/// covers orders m <= min(N, 10) at degrees up to min(N, 30); anything
/// beyond is caught by the per-order factorization during sampling.
void require_admissible(const RunConfig& config, bool allow_unchecked, std::ostream& log) {
  if (config.model.rho.is_kronecker() && config.model.kappa != 0.0 &&
      config.model.kappa != std::nearbyint(config.model.kappa))
    log << "warning: Kronecker rho evaluates to 0 at the non-integer lags produced by "
           "kappa = "
        << format_double(config.model.kappa) << "; the antisymmetric part vanishes\n";

  const DecayCertificate cert = effective_certificate(config);
  const C4Branch branch =
      config.model.rho.is_kronecker() ? C4Branch::kronecker : C4Branch::general;
  const C4Report report = check_c4(config.model, cert, branch);
  if (!report.passes) {
    const std::string msg = "summability check failed: " + report.reason;
    if (!allow_unchecked)
      throw AdmissibilityError(msg + " (pass --allow-unchecked to override)", -1);
    log << "warning: " << msg << " (continuing, --allow-unchecked)\n";
  }

  const int N = config.run.truncation;
  const int m_top = std::min(N, 10);
  const int deg_top = std::min(N, 30);
  for (int m = 0; m <= m_top; ++m)
    gamma_block(config.model, m, std::max(m, deg_top));  // throws AdmissibilityError
}

fs::path prepare_out_dir(const RunConfig& config) {
  fs::path dir(config.output.directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());
  return dir;
}

void write_manifest(const fs::path& path, const RunConfig& config,
                    const std::string& command, const std::string& grid_layout = "") {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  out << serialize_config(config);
  out << "\n[provenance]\n";
  out << "version = " << kVersion << "\n";
  out << "format_version = " << kFormatVersion << "\n";
  out << "command = " << command << "\n";
  if (!grid_layout.empty()) out << "grid_layout = " << grid_layout << "\n";
  if (!out) throw std::runtime_error("write failed for manifest " + path.string());
}

int run_guarded(const CommandOptions& options, std::ostream& log,
                const std::function<void(const RunConfig&)>& body) {
  try {
    const RunConfig config = load_with_overrides(options);
    body(config);
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const AdmissibilityError& e) {
    log << "admissibility error: " << e.what() << "\n";
    return kExitAdmissibility;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    log << "io error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace

int cmd_simulate(const CommandOptions& options, std::ostream& log) {
  return run_guarded(options, log, [&](const RunConfig& config) {
    require_admissible(config, options.allow_unchecked, log);
    const fs::path dir = prepare_out_dir(config);
    const LatLonGrid grid = uniform_grid(config.run.n_colat, config.run.n_lon);
    for (int rep = 0; rep < config.run.n_reps; ++rep) {
      const auto draw = draw_coefficients(
          config.model, config.run.truncation,
          rng::replicate_seed(config.run.seed, static_cast<std::uint64_t>(rep)));
      const Realization real = synthesize(draw, grid, options.threads);
      std::ostringstream name;
      name << "realization_" << std::setw(4) << std::setfill('0') << rep
           << (config.output.format == OutputFormat::csv ? ".csv" : ".bin");
      if (config.output.format == OutputFormat::csv)
        write_realization_csv(dir / name.str(), real);
      else
        write_realization_binary(dir / name.str(), real);
    }
    write_manifest(dir / "manifest.ini", config, "simulate");
    log << "simulate: wrote " << config.run.n_reps << " realization(s) to " << dir.string()
        << "\n";
  });
}

int cmd_covariance(const CommandOptions& options, std::ostream& log) {
  return run_guarded(options, log, [&](const RunConfig& config) {
    const fs::path dir = prepare_out_dir(config);
    const SliceParams& s = config.slice;
    const CovarianceSpec spec{config.model, config.run.truncation};

    std::ofstream out(dir / "covariance.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write covariance.csv");
    out << "L1,L2,dlon,value\n";

    auto linspace = [](double lo, double hi, std::size_t n) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
      return v;
    };

    if (s.panel == SliceParams::Panel::l2_dlon) {
      const LegendreTable t1 = ptilde_table(spec.truncation, std::cos(s.l1));
      for (double l2 : linspace(s.l2_min, s.l2_max, s.n_l2)) {
        const LegendreTable t2 = ptilde_table(spec.truncation, std::cos(l2));
        for (double dl : linspace(s.dlon_min, s.dlon_max, s.n_dlon)) {
          out << format_double(s.l1) << ',' << format_double(l2) << ',' << format_double(dl)
              << ',' << format_double(cov(spec, t1, t2, dl)) << '\n';
        }
      }
    } else {
      const auto l2s = linspace(s.l2_min, s.l2_max, s.n_l2);
      std::vector<LegendreTable> t2s;
      t2s.reserve(l2s.size());
      for (double l2 : l2s) t2s.push_back(ptilde_table(spec.truncation, std::cos(l2)));
      for (double l1 : linspace(s.l1_min, s.l1_max, s.n_l1)) {
        const LegendreTable t1 = ptilde_table(spec.truncation, std::cos(l1));
        for (std::size_t j = 0; j < l2s.size(); ++j) {
          out << format_double(l1) << ',' << format_double(l2s[j]) << ','
              << format_double(s.dlon) << ',' << format_double(cov(spec, t1, t2s[j], s.dlon))
              << '\n';
        }
      }
    }
    if (!out) throw std::runtime_error("write failed for covariance.csv");
    write_manifest(dir / "manifest.ini", config, "covariance");
    log << "covariance: wrote panel to " << (dir / "covariance.csv").string() << "\n";
  });
}

int cmd_variogram(const CommandOptions& options, std::ostream& log) {
  return run_guarded(options, log, [&](const RunConfig& config) {
    require_admissible(config, options.allow_unchecked, log);
    const fs::path dir = prepare_out_dir(config);
    const VariogramParams& vp = config.variogram;

    // Dense longitudes along the requested parallels only; this is the
    // layout the local estimator needs, recorded in the manifest.
    std::vector<double> lons(vp.n_lon);
    for (std::size_t j = 0; j < vp.n_lon; ++j)
      lons[j] = static_cast<double>(j) * kTwoPi / static_cast<double>(vp.n_lon);
    const LatLonGrid grid(vp.parallels, lons);

    const auto reals = ensemble(config.model, config.run.truncation, grid,
                                config.run.n_reps, config.run.seed, options.threads);

    const CovarianceSpec spec{config.model, config.run.truncation};
    std::ofstream out(dir / "variogram.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write variogram.csv");
    out << "colat,lag,gamma_hat,gamma_theory,n_pairs,env_min,env_max,env_q025,env_q975\n";
    for (double colat : vp.parallels) {
      const VariogramEstimate est =
          empirical_variogram(reals, colat, /*bin_width=*/0.0, vp.max_lag);
      for (std::size_t b = 0; b < est.lags.size(); ++b) {
        if (est.n_pairs[b] == 0) continue;
        out << format_double(colat) << ',' << format_double(est.lags[b]) << ','
            << format_double(est.gamma_hat[b]) << ','
            << format_double(variogram(spec, colat, est.lags[b])) << ',' << est.n_pairs[b]
            << ',' << format_double(est.env_min[b]) << ',' << format_double(est.env_max[b])
            << ',' << format_double(est.env_q025[b]) << ','
            << format_double(est.env_q975[b]) << '\n';
      }
    }
    if (!out) throw std::runtime_error("write failed for variogram.csv");
    std::ostringstream layout;
    layout << vp.parallels.size() << " parallels x " << vp.n_lon
           << " equispaced longitudes";
    write_manifest(dir / "manifest.ini", config, "variogram", layout.str());
    log << "variogram: wrote " << (dir / "variogram.csv").string() << "\n";
  });
}

int cmd_converge(const CommandOptions& options, std::ostream& log) {
  return run_guarded(options, log, [&](const RunConfig& config) {
    require_admissible(config, options.allow_unchecked, log);
    const fs::path dir = prepare_out_dir(config);
    const LatLonGrid grid = uniform_grid(config.run.n_colat, config.run.n_lon);

    const ConvergenceStudy study =
        convergence_study(config.model, config.converge.n_ref, config.converge.truncations,
                          grid, config.run.n_reps, config.run.seed, options.threads);

    std::ofstream out(dir / "convergence.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write convergence.csv");
    out << "N,mean_error,theory_bound\n";
    for (std::size_t t = 0; t < study.truncations.size(); ++t) {
      out << study.truncations[t] << ',' << format_double(study.errors[t]) << ','
          << format_double(l2_error_theoretical(config.model, study.truncations[t],
                                                config.converge.n_ref))
          << '\n';
    }
    if (!out) throw std::runtime_error("write failed for convergence.csv");
    write_manifest(dir / "manifest.ini", config, "converge");

    const DecayCertificate cert = effective_certificate(config);
    log << "converge: fitted slope " << format_double(study.fitted_slope) << "\n";
    if (cert.beta > 2.0)
      log << "converge: theoretical rate " << format_double(-(cert.beta - 2.0)) << "\n";
    else
      log << "converge: no polynomial decay certificate; theoretical rate n/a\n";
    log << "converge: wrote " << (dir / "convergence.csv").string() << "\n";
  });
}

int cmd_check(const CommandOptions& options, std::ostream& log) {
  return run_guarded(options, log, [&](const RunConfig& config) {
    const DecayCertificate cert = effective_certificate(config);
    const C4Branch branch =
        config.model.rho.is_kronecker() ? C4Branch::kronecker : C4Branch::general;
    const C4Report report = check_c4(config.model, cert, branch);
    log << "check: branch = "
        << (branch == C4Branch::kronecker ? "kronecker" : "general") << "\n";
    log << "check: certificate (beta=" << format_double(cert.beta)
        << ", r=" << format_double(cert.r) << ", n0=" << cert.n0 << ") "
        << (report.certificate_holds ? "holds" : "fails") << " up to n=" << report.n_check
        << "\n";
    log << "check: summability " << (report.passes ? "PASS" : "FAIL") << " ("
        << report.reason << ")\n";
    log << "check: truncated variance sum = " << format_double(report.variance_sum) << "\n";

    const int N = config.run.truncation;
    const int m_top = std::min(N, 10);
    const int deg_top = std::min(N, 30);
    bool psd_ok = true;
    for (int m = 0; m <= m_top; ++m) {
      try {
        const GammaBlock block = gamma_block(config.model, m, std::max(m, deg_top));
        log << "check: m=" << m << " min eigenvalue " << format_double(block.min_eigenvalue())
            << " PASS\n";
      } catch (const AdmissibilityError& e) {
        log << "check: m=" << m << " FAIL (" << e.what() << ")\n";
        psd_ok = false;
      }
    }
    if (!report.passes || !psd_ok)
      throw AdmissibilityError("model failed the admissibility report", -1);
    log << "check: OK\n";
  });
}

}  // namespace axisym
