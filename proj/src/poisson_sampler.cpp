#include "dicke/poisson_sampler.hpp"

#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

long long poisson_inversion(Rng& rng, double mean) {
  const double u = rng.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  long long k = 0;
  // The cap only matters for u within rounding of 1.
  while (u > cdf && k < 1000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

long long poisson_ptrs(Rng& rng, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<long long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<long long>(k);
    }
  }
}

}  // namespace

long long sample_poisson(Rng& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("Poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  return mean <= kInversionMeanLimit ? poisson_inversion(rng, mean) : poisson_ptrs(rng, mean);
}

std::size_t sample_categorical(Rng& rng, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw DomainError("categorical weights sum to zero");
  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    cumulative += weights[k];
    last_positive = k;
    if (target < cumulative) return k;
  }
  return last_positive;
}

}  // namespace dicke
