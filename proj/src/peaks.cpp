#include "dicke/peaks.hpp"

#include <cmath>
#include <limits>

namespace dicke::peaks {

namespace {

bool tied(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::vector<std::size_t> find_local_maxima(std::span<const double> values, double tie_tolerance) {
  std::vector<std::size_t> maxima;
  const std::size_t size = values.size();
  std::size_t first = 0;
  while (first < size) {
    std::size_t last = first;
    while (last + 1 < size && tied(values[last], values[last + 1], tie_tolerance)) ++last;
    const bool left_lower = first == 0 || values[first - 1] < values[first];
    const bool right_lower = last + 1 == size || values[last + 1] < values[last];
    if (left_lower && right_lower && values[last] > 0.0 && size > 1) maxima.push_back(last);
    first = last + 1;
  }
  return maxima;
}

double one_over_e_distance(std::span<const double> values, std::size_t peak, int direction) {
  const double top = values[peak];
  if (!(top > 0.0)) return kNaN;
  const double target = top / std::exp(1.0);
  auto k = static_cast<std::ptrdiff_t>(peak);
  const auto size = static_cast<std::ptrdiff_t>(values.size());
  while (true) {
    const std::ptrdiff_t next = k + direction;
    if (next < 0 || next >= size) return kNaN;
    const double v_prev = values[static_cast<std::size_t>(k)];
    const double v_next = values[static_cast<std::size_t>(next)];
    if (v_next > v_prev) return kNaN;  // reached a valley first
    if (v_next <= target) {
      const double x1 = static_cast<double>(std::abs(k - static_cast<std::ptrdiff_t>(peak)));
      const double x2 = x1 + 1.0;
      if (!(v_next > 0.0)) return x1;
      const double y1 = std::log(v_prev / top);
      const double y2 = std::log(v_next / top);
      if (y1 == y2) return x2;
      const double w2 = x1 * x1 + (-1.0 - y1) * (x2 * x2 - x1 * x1) / (y2 - y1);
      return std::sqrt(w2);
    }
    k = next;
  }
}

double one_over_e_halfwidth(std::span<const double> values, std::size_t peak) {
  const double left = one_over_e_distance(values, peak, -1);
  const double right = one_over_e_distance(values, peak, +1);
  if (std::isnan(left)) return right;
  if (std::isnan(right)) return left;
  return 0.5 * (left + right);
}

double log_parabola_sigma(std::span<const double> values, std::size_t peak) {
  if (peak == 0 || peak + 1 >= values.size()) return kNaN;
  const double lo = values[peak - 1];
  const double mid = values[peak];
  const double hi = values[peak + 1];
  if (!(lo > 0.0 && mid > 0.0 && hi > 0.0)) return kNaN;
  const double curvature = std::log(hi) - 2.0 * std::log(mid) + std::log(lo);
  if (!(curvature < 0.0)) return kNaN;
  return std::sqrt(-1.0 / curvature);
}

}  // namespace dicke::peaks
