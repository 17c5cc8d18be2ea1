#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dicke/detection.hpp"
#include "dicke/errors.hpp"
#include "dicke/physical_params.hpp"
#include "dicke/squeeze_scan.hpp"

using namespace dicke;

TEST_CASE("grids include both ends") {
  const auto g = make_grid(0.05, 2.0, 0.05);
  CHECK(g.size() == 40);
  CHECK(g.front() == 0.05);
  CHECK(g.back() == doctest::Approx(2.0));
  CHECK(make_grid(1.0, 1.0, 0.5).size() == 1);
  CHECK_THROWS_AS(make_grid(2.0, 1.0, 0.1), ConfigError);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), ConfigError);
}

TEST_CASE("scan maps failures to NaN and finds the smallest finite value") {
  const std::vector<double> grid = {1.0, 2.0, 3.0, 4.0};
  const auto values = scan(grid, [](double x) {
    if (x == 2.0) throw std::runtime_error("undefined");
    return (x - 3.0) * (x - 3.0);
  });
  CHECK(std::isnan(values[1]));
  const auto best = locate_minimum(grid, values);
  CHECK(best.index == 2);
  CHECK(best.interior);
  const std::vector<double> nothing = {NAN, NAN, NAN, NAN};
  CHECK_THROWS_AS(locate_minimum(grid, nothing), ShapeError);
}

TEST_CASE("decay model scan recovers the closed-form optimum") {
  const auto grid = make_grid(0.05, 2.0, 0.05);
  const auto xi = scan(grid, [](double c) { return squeezing_with_decay(c, 200, 100.0); });
  const auto best = locate_minimum(grid, xi);
  CHECK(std::abs(best.c - 0.5) <= 0.05 + 1e-12);
  CHECK(best.xi == doctest::Approx(0.3297).epsilon(0.02));
}

TEST_CASE("exact Dicke decay model") {
  // without decay it is the exact null-collapse squeezing
  const double bare = squeezing_parameter(collapse_perfect(
      apply_pulse(initial_coherent_spin_state(200), PulseStrength(0.5)), 0));
  CHECK(xi_decay_dicke(200, 0.5, 1e300) == doctest::Approx(bare).epsilon(1e-12));
  CHECK(xi_decay_dicke(200, 0.5, 100.0) == doctest::Approx(bare * std::exp(0.5)).epsilon(1e-12));
}

TEST_CASE("efficiency model") {
  const auto grid = make_grid(0.25, 5.0, 0.25);
  const auto xi = scan(grid, [](double c) { return xi_efficiency(20, c, 0.85); });
  const auto best = locate_minimum(grid, xi);
  CHECK(best.interior);
  CHECK(best.c >= 1.5);
  CHECK(best.c <= 3.0);

  // perfect detection: monotone non-increasing
  const auto perfect = scan(grid, [](double c) { return xi_efficiency(20, c, 1.0); });
  for (std::size_t i = 1; i < perfect.size(); ++i) CHECK(perfect[i] <= perfect[i - 1]);
  CHECK(xi_efficiency(20, 1.3, 1.0) ==
        doctest::Approx(squeezing_parameter(collapse_perfect(apply_pulse(initial_coherent_spin_state(20), PulseStrength(1.3)), 0)))
            .epsilon(1e-12));
  // nothing detected: <S_x> decoheres by exp(-C^2/2) while var_Sz stays S/2
  for (double c : {0.5, 1.0, 2.0}) CHECK(xi_efficiency(20, c, 0.0) == doctest::Approx(std::exp(0.5 * c * c)).epsilon(1e-10));
}

TEST_CASE("combined model divides by the mean-spin decay") {
  CHECK(xi_combined(20, 1.0, 0.85, 100.0) ==
        doctest::Approx(xi_efficiency(20, 1.0, 0.85) * std::exp(20.0 / 100.0)).epsilon(1e-14));
}
