#include <limits>

#include "dicke/kernels.hpp"
#include "elements.hpp"

namespace dicke::kernels {

double measurement_log_scale(const MeasurementKernel& kernel) {
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < kernel.rho->rows(); ++i) {
    double log_mag = 0.0;
    double phase = 0.0;
    if (detail::measurement_log_element(kernel, i, i, log_mag, phase)) {
      best = std::max(best, log_mag);
    }
  }
  return best;
}

namespace serial {

void poisson_mixture(const PoissonMixture& mixture, std::span<double> out) {
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = detail::mixture_element(mixture, n);
}

void measurement(const MeasurementKernel& kernel, Eigen::MatrixXcd& out) {
  const Eigen::Index dim = kernel.rho->rows();
  out.resize(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    for (Eigen::Index row = 0; row < dim; ++row) {
      out(row, col) = detail::measurement_element(kernel, row, col);
    }
  }
}

}  // namespace serial
}  // namespace dicke::kernels
