#pragma once

#include <cstdint>
#include <random>

namespace relifit {

/// SplitMix64 finalizer; used to derive well-separated child seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seedable 64-bit generator with deterministic stream splitting. Doubles
/// are built from the top 53 bits directly so sequences are identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  /// Independent child stream; depends only on (seed, stream).
  Rng split(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1]; safe to take the log of.
  double uniform_pos() { return 1.0 - uniform(); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace relifit
