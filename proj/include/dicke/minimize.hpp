#pragma once

#include <cmath>

namespace dicke::numeric {

struct Minimum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

// Golden-section search for a unimodal f on [lo, hi]. Stops when the bracket
// is narrower than rel_tol * |x| (or abs_tol) or after max_iterations.
template <typename F>
Minimum golden_section_minimize(F&& f, double lo, double hi, double rel_tol = 1e-12,
                                double abs_tol = 1e-300, int max_iterations = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  for (; it < max_iterations; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= std::max(abs_tol, rel_tol * std::abs(mid))) break;
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double x = f1 <= f2 ? x1 : x2;
  return {x, f1 <= f2 ? f1 : f2, it};
}

}  // namespace dicke::numeric
