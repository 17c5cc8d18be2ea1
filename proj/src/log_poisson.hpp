#pragma once

// Poisson log-pmf in saddle-point form: log p = -stirlerr(n) - bd0(n, rate)
// - log(2 pi n)/2. The direct n log(rate) - rate - lgamma(n+1) loses about
// n log(n) ulps to cancellation in the tails.

#include <cmath>
#include <numbers>

namespace dicke::detail {

// lgamma(n+1) - (n+1/2) log n + n - log(2 pi)/2
inline double stirlerr(double n) {
  if (n <= 15.0) {
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  const double nn = n * n;
  return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0) / nn) / nn) / nn) / n;
}

// x log(x/m) + m - x without cancellation near x = m
inline double bd0(double x, double m) {
  if (std::abs(x - m) < 0.1 * (x + m)) {
    const double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double ej = 2.0 * x * v;
    const double v2 = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v2;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return s;
      s = next;
    }
    return s;
  }
  return x * std::log(x / m) + m - x;
}

// rate > 0, n >= 0
inline double log_poisson_pmf(double n, double rate) {
  if (n == 0.0) return -rate;
  return -stirlerr(n) - bd0(n, rate) - 0.5 * std::log(2.0 * std::numbers::pi * n);
}

}  // namespace dicke::detail
