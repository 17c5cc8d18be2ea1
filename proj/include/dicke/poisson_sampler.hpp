#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace dicke {

// Explicitly seeded generator. Uniforms are built from the raw 64-bit engine
// output, so a seed reproduces the same stream on every conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Exact Poisson variate: sequential-search inversion for mean <= 30,
// Hormann's transformed rejection (PTRS) above.
long long sample_poisson(Rng& rng, double mean);

// Index drawn with probability weights[k] / sum(weights).
std::size_t sample_categorical(Rng& rng, std::span<const double> weights);

inline constexpr double kInversionMeanLimit = 30.0;

}  // namespace dicke
