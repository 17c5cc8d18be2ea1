#pragma once

#include <cmath>
#include <limits>

#include "dicke/kernels.hpp"
#include "../log_poisson.hpp"

namespace dicke::kernels::detail {

inline double mixture_element(const PoissonMixture& m, std::size_t n) {
  double sum = 0.0;
  const double dn = static_cast<double>(n);
  for (std::size_t b = 0; b < m.rates.size(); ++b) {
    const double lw = m.log_weights[b];
    if (lw == -std::numeric_limits<double>::infinity()) continue;
    const double rate = m.rates[b];
    if (rate == 0.0) {
      if (n == 0) sum += std::exp(lw);
      continue;
    }
    sum += std::exp(lw + dicke::detail::log_poisson_pmf(dn, rate));
  }
  return sum;
}

// log|K(M,N) rho(M,N)| and its phase, without the shift. Returns false for an
// exact zero.
inline bool measurement_log_element(const MeasurementKernel& k, Eigen::Index row,
                                    Eigen::Index col, double& log_mag, double& phase) {
  const Complex rho = (*k.rho)(row, col);
  if (rho == Complex(0.0, 0.0)) return false;
  const Complex a_m = k.alpha[static_cast<std::size_t>(row)];
  const Complex a_n = k.alpha[static_cast<std::size_t>(col)];
  const Complex cross = (1.0 - k.efficiency) * std::conj(a_n) * a_m;
  log_mag = std::log(std::abs(rho)) - 0.5 * (std::norm(a_m) + std::norm(a_n)) + cross.real();
  phase = std::arg(rho) + cross.imag();
  if (k.photons > 0) {
    if (a_m == Complex(0.0, 0.0) || a_n == Complex(0.0, 0.0)) return false;
    const double n = static_cast<double>(k.photons);
    log_mag += n * (std::log(std::abs(a_m)) + std::log(std::abs(a_n)));
    phase += n * (std::arg(a_m) - std::arg(a_n));
  }
  return true;
}

inline Complex measurement_element(const MeasurementKernel& k, Eigen::Index row,
                                   Eigen::Index col) {
  double log_mag = 0.0;
  double phase = 0.0;
  if (!measurement_log_element(k, row, col, log_mag, phase)) return {0.0, 0.0};
  return std::polar(std::exp(log_mag - k.log_shift), phase);
}

}  // namespace dicke::kernels::detail
