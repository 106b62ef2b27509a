#include "axisym/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace axisym {

namespace {

void require_stream(const std::ofstream& out, const std::filesystem::path& path) {
  if (!out) throw std::runtime_error("io: cannot write " + path.string());
}

template <typename T>
void put_le(std::string& buf, T v) {
  // Serialize explicitly little-endian, byte by byte.
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const char* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<T>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_realization_csv(const std::filesystem::path& path, const Realization& real) {
  std::ofstream out(path, std::ios::binary);
  require_stream(out, path);
  out << "colat,lon,value\n";
  for (std::size_t i = 0; i < real.grid.n_colat(); ++i) {
    const std::string colat = format_double(real.grid.colats()[i]);
    for (std::size_t j = 0; j < real.grid.n_lon(); ++j) {
      out << colat << ',' << format_double(real.grid.lons()[j]) << ','
          << format_double(real.at(i, j)) << '\n';
    }
  }
  if (!out) throw std::runtime_error("io: write failed for " + path.string());
}

void write_realization_binary(const std::filesystem::path& path, const Realization& real) {
  std::string header;
  header.reserve(32);
  header.append(kBinaryMagic, sizeof(kBinaryMagic));
  put_le<std::uint32_t>(header, static_cast<std::uint32_t>(real.grid.n_colat()));
  put_le<std::uint32_t>(header, static_cast<std::uint32_t>(real.grid.n_lon()));
  put_le<std::uint32_t>(header, static_cast<std::uint32_t>(real.truncation));
  put_le<std::uint32_t>(header, 0u);
  put_le<std::uint64_t>(header, real.seed);

  std::string payload;
  payload.reserve(real.values.size() * sizeof(double));
  for (double v : real.values) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    put_le<std::uint64_t>(payload, bits);
  }

  std::ofstream out(path, std::ios::binary);
  require_stream(out, path);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw std::runtime_error("io: write failed for " + path.string());
}

BinaryRealization read_realization_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("io: cannot read " + path.string());
  char header[32];
  in.read(header, sizeof(header));
  if (!in || std::memcmp(header, kBinaryMagic, sizeof(kBinaryMagic)) != 0)
    throw std::runtime_error("io: bad magic in " + path.string());
  BinaryRealization out;
  out.n_colat = get_le<std::uint32_t>(header + 8);
  out.n_lon = get_le<std::uint32_t>(header + 12);
  out.truncation = get_le<std::uint32_t>(header + 16);
  out.seed = get_le<std::uint64_t>(header + 24);
  const std::size_t n = static_cast<std::size_t>(out.n_colat) * out.n_lon;
  out.values.resize(n);
  std::vector<char> raw(n * sizeof(double));
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!in) throw std::runtime_error("io: truncated payload in " + path.string());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bits = get_le<std::uint64_t>(raw.data() + i * sizeof(double));
    std::memcpy(&out.values[i], &bits, sizeof(double));
  }
  return out;
}

}  // namespace axisym
