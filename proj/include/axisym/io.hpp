#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "axisym/sampler.hpp"

namespace axisym {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// CSV with header "colat,lon,value", one row per grid point, row-major.
void write_realization_csv(const std::filesystem::path& path, const Realization& real);

// Binary realization layout (little-endian), 32-byte header then the
// values as n_colat * n_lon float64, row-major over (colat, lon):
//   bytes  0..7   magic "AXSYGP01"
//   bytes  8..11  u32 n_colat
//   bytes 12..15  u32 n_lon
//   bytes 16..19  u32 truncation
//   bytes 20..23  u32 reserved (zero)
//   bytes 24..31  u64 seed
inline constexpr char kBinaryMagic[8] = {'A', 'X', 'S', 'Y', 'G', 'P', '0', '1'};

void write_realization_binary(const std::filesystem::path& path, const Realization& real);

struct BinaryRealization {
  std::uint32_t n_colat = 0;
  std::uint32_t n_lon = 0;
  std::uint32_t truncation = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

BinaryRealization read_realization_binary(const std::filesystem::path& path);

}  // namespace axisym
