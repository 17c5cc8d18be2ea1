#include "dicke/squeeze_scan.hpp"

#include <cmath>
#include <limits>

#include "dicke/detection.hpp"
#include "dicke/errors.hpp"
#include "dicke/pulse_scattering.hpp"

namespace dicke {

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw ConfigError("grid needs step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
  return grid;
}

double xi_decay_dicke(int atom_count, double c, double d_res) {
  const auto joint = apply_pulse(initial_coherent_spin_state(atom_count), PulseStrength(c));
  const auto state = collapse_perfect(joint, 0);
  auto moments = spin_moments(state);
  const double decay = std::exp(-c * c * atom_count / d_res);
  moments.mean_sx *= decay;
  moments.mean_sy *= decay;
  moments.mean_sz *= decay;
  moments.mean_spin_length *= decay;
  return std::sqrt(2.0 * state.spin().s()) * std::sqrt(moments.var_sz) / moments.mean_spin_length;
}

double xi_efficiency(int atom_count, double c, double efficiency, int photons) {
  const auto joint = apply_pulse(initial_coherent_spin_state(atom_count), PulseStrength(c));
  const auto rho = collapse_imperfect(joint, DetectionOutcome(photons, efficiency));
  return squeezing_parameter(rho);
}

double xi_combined(int atom_count, double c, double efficiency, double d_res, int photons) {
  return xi_efficiency(atom_count, c, efficiency, photons) / std::exp(-c * c * atom_count / d_res);
}

std::vector<double> scan(std::span<const double> grid, const std::function<double(double)>& f) {
  std::vector<double> values(grid.size(), std::numeric_limits<double>::quiet_NaN());
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      values[static_cast<std::size_t>(i)] = f(grid[static_cast<std::size_t>(i)]);
    } catch (const std::exception&) {
      // undefined at this point
    }
  }
  return values;
}

ScanMinimum locate_minimum(std::span<const double> grid, std::span<const double> values) {
  ScanMinimum best;
  bool found = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) continue;
    if (!found || values[i] < best.xi) {
      best = {i, grid[i], values[i], false};
      found = true;
    }
  }
  if (!found) throw ShapeError("scan has no finite values");
  best.interior = best.index > 0 && best.index + 1 < values.size();
  return best;
}

}  // namespace dicke
