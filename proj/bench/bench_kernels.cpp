// Serial reference vs OpenMP kernels. Thread count follows DICKE_THREADS or
// OMP_NUM_THREADS.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "dicke/detection.hpp"
#include "dicke/kernels.hpp"
#include "dicke/parallel.hpp"

namespace {

using namespace dicke;

struct MixtureInput {
  std::vector<double> log_weights;
  std::vector<double> rates;
  std::vector<double> out;
};

MixtureInput mixture_input(int atoms, double c) {
  const auto joint = apply_pulse(initial_coherent_spin_state(atoms), PulseStrength(c));
  MixtureInput in;
  for (double w : joint.populations()) in.log_weights.push_back(w > 0.0 ? std::log(w) : -INFINITY);
  in.rates = joint.photon_means();
  const int n_max = default_n_max(joint.spin(), c);
  in.out.resize(static_cast<std::size_t>(n_max) + 1);
  return in;
}

template <void (*Kernel)(const kernels::PoissonMixture&, std::span<double>)>
void BM_PoissonMixture(benchmark::State& state) {
  auto in = mixture_input(static_cast<int>(state.range(0)), 1.0);
  const kernels::PoissonMixture mixture{in.log_weights, in.rates};
  for (auto _ : state) {
    Kernel(mixture, in.out);
    benchmark::DoNotOptimize(in.out.data());
  }
  state.counters["n_max"] = static_cast<double>(in.out.size() - 1);
}

template <void (*Kernel)(const kernels::MeasurementKernel&, Eigen::MatrixXcd&)>
void BM_Measurement(benchmark::State& state) {
  const int atoms = static_cast<int>(state.range(0));
  const auto rho = AtomicDensityMatrix::from_pure(initial_coherent_spin_state(atoms)).matrix();
  const SpinQuantum spin(atoms);
  std::vector<Complex> alpha(spin.dimension());
  for (std::size_t k = 0; k < alpha.size(); ++k) alpha[k] = Complex(0.0, -0.5 * spin.m(k));
  kernels::MeasurementKernel kernel{&rho, alpha, 20, 0.85, 0.0};
  kernel.log_shift = kernels::measurement_log_scale(kernel);
  Eigen::MatrixXcd out;
  for (auto _ : state) {
    Kernel(kernel, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_PoissonMixture<kernels::serial::poisson_mixture>)->Name("poisson_mixture/serial")->Arg(200)->Arg(400);
BENCHMARK(BM_PoissonMixture<kernels::omp::poisson_mixture>)->Name("poisson_mixture/omp")->Arg(200)->Arg(400);
BENCHMARK(BM_Measurement<kernels::serial::measurement>)->Name("measurement/serial")->Arg(400);
BENCHMARK(BM_Measurement<kernels::omp::measurement>)->Name("measurement/omp")->Arg(400);

int main(int argc, char** argv) {
  dicke::parallel::configure_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
