#include "dicke/kernels.hpp"
#include "elements.hpp"

namespace dicke::kernels::omp {

void poisson_mixture(const PoissonMixture& mixture, std::span<double> out) {
  const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < count; ++n) {
    out[static_cast<std::size_t>(n)] = detail::mixture_element(mixture, static_cast<std::size_t>(n));
  }
}

void measurement(const MeasurementKernel& kernel, Eigen::MatrixXcd& out) {
  const Eigen::Index dim = kernel.rho->rows();
  out.resize(dim, dim);
#pragma omp parallel for schedule(static)
  for (Eigen::Index col = 0; col < dim; ++col) {
    for (Eigen::Index row = 0; row < dim; ++row) {
      out(row, col) = detail::measurement_element(kernel, row, col);
    }
  }
}

}  // namespace dicke::kernels::omp
