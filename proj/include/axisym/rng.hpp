#pragma once

#include <cstdint>
#include <random>

namespace axisym::rng {

/// splitmix64 finalizer; the basis of all stream-seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

/// Order-free combination of a seed with a stream label.
std::uint64_t mix(std::uint64_t seed, std::uint64_t label);

// Stream-seed derivation rule (frozen; changing it changes every output):
//   replicate_seed(base_seed, i) = mix(base_seed, kReplicateSalt ^ i)
//   block_seed(draw_seed, m)     = mix(draw_seed, kOrderSalt ^ m)
// Every harmonic-order block within a draw, and every replicate within an
// ensemble, therefore owns an independent generator stream, so blocks may
// be skipped or generated concurrently without affecting one another.
inline constexpr std::uint64_t kReplicateSalt = 0x9d3f2c81b74a16e5ull;
inline constexpr std::uint64_t kOrderSalt = 0x5b8e1afcd902347bull;

std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t replicate);
std::uint64_t block_seed(std::uint64_t draw_seed, std::uint64_t order);

/// Deterministic stream of standard normal deviates: mt19937_64 uniforms
/// fed through Box-Muller. Self-contained so the byte-for-byte output
/// does not depend on the standard library's normal_distribution.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace axisym::rng
