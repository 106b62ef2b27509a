#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "axisym/config.hpp"

namespace axisym {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAdmissibility = 3;
inline constexpr int kExitIo = 4;

/// Options shared by every subcommand; seed/out override the config file.
struct CommandOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  int threads = 1;
  bool allow_unchecked = false;
};

/// Writes n_reps realization files plus a re-runnable manifest.
int cmd_simulate(const CommandOptions& options, std::ostream& log);

/// Writes a covariance panel CSV (columns L1, L2, dlon, value).
int cmd_covariance(const CommandOptions& options, std::ostream& log);

/// Writes the empirical-vs-theoretical variogram table.
int cmd_variogram(const CommandOptions& options, std::ostream& log);

/// Writes the convergence table and prints the fitted and theoretical rates.
int cmd_converge(const CommandOptions& options, std::ostream& log);

/// Runs the summability check and the PSD probe; reports to the log.
int cmd_check(const CommandOptions& options, std::ostream& log);

}  // namespace axisym
