#pragma once

// Data-parallel inner loops. `serial` is the reference implementation kept
// for testing; `omp` distributes the outer loop with OpenMP. Both evaluate
// every output element with the same expression in the same order, so their
// results are bitwise identical for any thread count.

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace dicke::kernels {

using Complex = std::complex<double>;

// out[n] = sum_b exp(log_weights[b]) * Poisson(n; rates[b]) for n = 0..out.size()-1,
// each term evaluated in log space.
// Branches with log weight -inf are skipped; rate 0 contributes only to n = 0.
struct PoissonMixture {
  std::span<const double> log_weights;
  std::span<const double> rates;
};

// Detection kernel for n counted photons at efficiency mu:
//   out[M,N] = rho[M,N] alpha_M^n conj(alpha_N)^n exp((1-mu) conj(alpha_N) alpha_M)
//              exp(-(|alpha_M|^2 + |alpha_N|^2)/2) exp(-log_shift)
struct MeasurementKernel {
  const Eigen::MatrixXcd* rho = nullptr;
  std::span<const Complex> alpha;
  int photons = 0;
  double efficiency = 1.0;
  double log_shift = 0.0;
};

// Largest log|out[M,M]| before the shift; every |out[M,N]| is bounded by it.
double measurement_log_scale(const MeasurementKernel& kernel);

namespace serial {
void poisson_mixture(const PoissonMixture& mixture, std::span<double> out);
void measurement(const MeasurementKernel& kernel, Eigen::MatrixXcd& out);
}  // namespace serial

namespace omp {
void poisson_mixture(const PoissonMixture& mixture, std::span<double> out);
void measurement(const MeasurementKernel& kernel, Eigen::MatrixXcd& out);
}  // namespace omp

}  // namespace dicke::kernels
