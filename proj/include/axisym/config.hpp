#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "axisym/spectrum.hpp"
#include "axisym/sphere_geom.hpp"

namespace axisym {

/// Configuration error; what() carries "source:line: message".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct RunParams {
  int truncation = 0;
  std::size_t n_colat = 1;
  std::size_t n_lon = 1;
  std::uint64_t seed = 0;
  int n_reps = 1;
};

enum class OutputFormat { csv, binary };

struct OutputParams {
  std::string directory = "out";
  OutputFormat format = OutputFormat::csv;
};

/// Covariance slice request: a (L2, dlon) panel at fixed L1, or a
/// (L1, L2) panel at fixed dlon.
struct SliceParams {
  enum class Panel { l2_dlon, l1_l2 };
  Panel panel = Panel::l2_dlon;
  double l1 = 0.5 * kPi;
  double l2_min = 0.0, l2_max = 0.0;
  std::size_t n_l2 = 0;
  double dlon_min = 0.0, dlon_max = 0.0;
  std::size_t n_dlon = 0;
  double l1_min = 0.0, l1_max = 0.0;
  std::size_t n_l1 = 0;
  double dlon = 0.0;
};

struct VariogramParams {
  std::vector<double> parallels;  // colatitudes, defaults to 4 evenly spread
  std::size_t n_lon = 250;
  double max_lag = kPi / 2.0;
};

struct ConvergeParams {
  int n_ref = 512;
  std::vector<int> truncations = {16, 32, 64, 128};
};

struct RunConfig {
  SpectrumModel model;
  RunParams run;
  OutputParams output;
  std::optional<DecayCertificate> decay;  // [decay] overrides the family default
  SliceParams slice;
  VariogramParams variogram;
  ConvergeParams converge;
};

/// Parses the flat INI config (sections [model], [run], [output] required;
/// [covariance], [variogram], [converge], [decay], [provenance] optional).
/// Unknown sections or keys are rejected with their line number.
RunConfig parse_config(const std::string& text, const std::string& source_name);

RunConfig load_config(const std::string& path);

/// Canonical key=value serialization of the resolved configuration; a valid
/// config file in itself, which is what makes manifests re-runnable.
std::string serialize_config(const RunConfig& config);

}  // namespace axisym
