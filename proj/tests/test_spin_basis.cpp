#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>

#include "dicke/errors.hpp"
#include "dicke/spin_basis.hpp"

using namespace dicke;

namespace {

// Exact C(n, k) for n <= 60 (fits in 64 bits: C(60, 30) ~ 1.2e17).
std::uint64_t exact_binomial(int n, int k) {
  if (k > n - k) k = n - k;
  unsigned __int128 value = 1;
  for (int i = 1; i <= k; ++i) value = value * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(value);
}

DickeState random_state(int atoms, std::mt19937_64& engine) {
  std::normal_distribution<double> gauss;
  std::vector<Complex> amps(static_cast<std::size_t>(atoms) + 1);
  for (auto& a : amps) a = Complex(gauss(engine), gauss(engine));
  return DickeState::normalized(SpinQuantum(atoms), std::move(amps));
}

}  // namespace

TEST_CASE("log_binomial_amplitude matches the documented values") {
  CHECK(log_binomial_amplitude(2, 2) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(log_binomial_amplitude(2, 0) == doctest::Approx(std::log(std::sqrt(2.0) / 2.0)).epsilon(1e-15));
  CHECK(std::exp(2.0 * log_binomial_amplitude(20, 0)) == doctest::Approx(0.176197).epsilon(1e-6));
}

TEST_CASE("log_binomial_amplitude agrees with exact integer factorials for S <= 30") {
  for (int twice_s = 1; twice_s <= 60; ++twice_s) {
    for (int k = 0; k <= twice_s; ++k) {
      const int twice_m = 2 * k - twice_s;
      const double exact = static_cast<double>(exact_binomial(twice_s, k)) * std::ldexp(1.0, -twice_s);
      const double value = std::exp(2.0 * log_binomial_amplitude(twice_s, twice_m));
      CHECK(std::abs(value - exact) <= 1e-12 * exact);
    }
  }
}

TEST_CASE("log_binomial_amplitude rejects projections off the lattice") {
  CHECK_THROWS_AS(log_binomial_amplitude(4, 6), DomainError);
  CHECK_THROWS_AS(log_binomial_amplitude(4, -6), DomainError);
  CHECK_THROWS_AS(log_binomial_amplitude(4, 1), DomainError);
  CHECK(std::isfinite(std::exp(log_binomial_amplitude(1'000'000, 0))));
}

TEST_CASE("SpinQuantum bookkeeping") {
  const SpinQuantum spin(5);
  CHECK(spin.s() == 2.5);
  CHECK(spin.dimension() == 6);
  CHECK(spin.m(0) == -2.5);
  CHECK(spin.m(5) == 2.5);
  CHECK(spin.index_of(1) == 3);
  CHECK_FALSE(spin.contains(2));
  CHECK_THROWS_AS(spin.index_of(7), DomainError);
  CHECK_THROWS_AS(SpinQuantum(0), DomainError);
  CHECK(spin.raising_coefficient(5) == 0.0);
  CHECK(spin.raising_coefficient(0) == doctest::Approx(std::sqrt(2.5 * 3.5 - (-2.5) * (-1.5))));
}

TEST_CASE("initial coherent spin state") {
  const auto two = initial_coherent_spin_state(2);
  CHECK(two.amplitude(0).real() == doctest::Approx(0.5));
  CHECK(two.amplitude(1).real() == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(two.amplitude(2).real() == doctest::Approx(0.5));

  const auto state = initial_coherent_spin_state(20);
  CHECK(std::abs(state.norm_squared() - 1.0) <= 1e-12);
  for (std::size_t k = 0; k < state.spin().dimension(); ++k) {
    CHECK(state.amplitude(k).real() > 0.0);
    CHECK(state.amplitude(k).imag() == 0.0);
    // bitwise symmetric in M
    CHECK(state.amplitude(k) == state.amplitude(state.spin().dimension() - 1 - k));
  }
  const auto sx = apply_spin_operator(Axis::x, state.spin(), state.amplitudes());
  double residual = 0.0;
  for (std::size_t k = 0; k < sx.size(); ++k) residual = std::max(residual, std::abs(sx[k] - 10.0 * state.amplitude(k)));
  CHECK(residual <= 1e-10);
  CHECK_THROWS_AS(initial_coherent_spin_state(0), DomainError);
}

TEST_CASE("spin moments of reference states") {
  const auto m = spin_moments(initial_coherent_spin_state(20));
  CHECK(m.mean_sz == doctest::Approx(0.0));
  CHECK(m.var_sz == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(m.mean_sx == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(m.mean_sy == doctest::Approx(0.0));
  CHECK(m.mean_spin_length == doctest::Approx(10.0));

  const auto top = spin_moments(DickeState::basis(SpinQuantum(7), 7));
  CHECK(top.mean_sz == 3.5);
  CHECK(top.var_sz == 0.0);

  std::vector<Complex> unnormalized(3, Complex(1.0, 0.0));
  CHECK_THROWS_AS(spin_moments(DickeState(SpinQuantum(2), unnormalized)), ContractViolation);
}

TEST_CASE("squeezing parameter") {
  for (int atoms : {1, 2, 7, 20, 101}) CHECK(squeezing_parameter(initial_coherent_spin_state(atoms)) == doctest::Approx(1.0).epsilon(1e-12));
  // |S=1, M=0> has zero mean spin
  CHECK_THROWS_AS(squeezing_parameter(DickeState::basis(SpinQuantum(2), 0)), SingularStateError);
  // Mean spin along z: orthogonal variances are var_x = var_y = S/2
  const auto top = spin_moments(DickeState::basis(SpinQuantum(10), 10));
  CHECK(orthogonal_variance(top) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(squeezing_parameter(top, SpinQuantum(10)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ladder bound and symmetry properties") {
  std::mt19937_64 engine(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int atoms = 1 + trial % 25;
    const auto state = random_state(atoms, engine);
    CHECK(std::abs(state.norm_squared() - 1.0) <= 1e-12);
    const auto m = spin_moments(state);
    const double s = 0.5 * atoms;
    CHECK(m.mean_sx * m.mean_sx + m.mean_sy * m.mean_sy + m.mean_sz * m.mean_sz <= s * s + 1e-9);
    CHECK(m.var_sz >= 0.0);
    CHECK(m.var_sy >= 0.0);
    CHECK(m.mean_spin_length ==
          doctest::Approx(std::sqrt(m.mean_sx * m.mean_sx + m.mean_sy * m.mean_sy + m.mean_sz * m.mean_sz)));
  }
  std::uniform_real_distribution<double> uniform(0.1, 1.0);
  for (int atoms : {4, 9, 16}) {
    std::vector<Complex> amps(static_cast<std::size_t>(atoms) + 1);
    for (std::size_t k = 0; k <= amps.size() / 2; ++k) amps[k] = amps[amps.size() - 1 - k] = uniform(engine);
    const auto m = spin_moments(DickeState::normalized(SpinQuantum(atoms), amps));
    CHECK(std::abs(m.mean_sz) <= 1e-12);
    CHECK(std::abs(m.mean_sy) <= 1e-12);
  }
}

TEST_CASE("mean spin with decay") {
  CHECK(mean_spin_with_decay(10.0, 0.0) == 10.0);
  CHECK(mean_spin_with_decay(10.0, 1.0) == doctest::Approx(10.0 / std::exp(1.0)));
  CHECK(mean_spin_with_decay(10.0, std::sqrt(std::log(2.0))) == doctest::Approx(5.0));
  CHECK_THROWS_AS(mean_spin_with_decay(10.0, -1.0), DomainError);
}

TEST_CASE("normalized rejects the zero vector") {
  CHECK_THROWS_AS(DickeState::normalized(SpinQuantum(2), std::vector<Complex>(3)), DomainError);
  CHECK_THROWS(DickeState(SpinQuantum(2), std::vector<Complex>(2)));
}
