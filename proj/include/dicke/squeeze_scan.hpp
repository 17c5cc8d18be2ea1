#pragma once

// Squeezing parameter as a function of pulse strength for the decay model
// and the detection-efficiency model, evaluated over grids.

#include <functional>
#include <span>
#include <vector>

namespace dicke {

// start, start+step, ... up to stop inclusive (within 1e-9 steps).
std::vector<double> make_grid(double start, double stop, double step);

// Exact Dicke null collapse of the initial state with the mean spin reduced
// by exp(-C_spon^2), C_spon^2 = C^2 N_a / d_res.
double xi_decay_dicke(int atom_count, double c, double d_res);

// Initial state, one pulse, n_m counts at efficiency mu; xi of the
// conditional density matrix. SingularStateError for vanishing mean spin.
double xi_efficiency(int atom_count, double c, double efficiency, int photons = 0);

// xi of the efficiency model with the mean spin also decayed by
// exp(-C^2 N_a / d_res).
double xi_combined(int atom_count, double c, double efficiency, double d_res, int photons = 0);

// f over the grid, OpenMP-parallel; points where f throws become NaN.
std::vector<double> scan(std::span<const double> grid, const std::function<double(double)>& f);

struct ScanMinimum {
  std::size_t index = 0;
  double c = 0.0;
  double xi = 0.0;
  bool interior = false;  // strictly inside the grid
};
// Smallest finite value; ties keep the first.
ScanMinimum locate_minimum(std::span<const double> grid, std::span<const double> values);

}  // namespace dicke
