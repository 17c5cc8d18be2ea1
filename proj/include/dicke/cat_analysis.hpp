#pragma once

// Structure of collapsed atomic distributions: cat-arm locations and widths,
// null-measurement width, cat squeezing and arm coherence.

#include <span>
#include <vector>

#include "dicke/detection.hpp"
#include "dicke/spin_basis.hpp"

namespace dicke {

struct PeakReport {
  double m_peak = 0.0;   // continuous arm location
  double m_width = 0.0;  // 1/e half-width in M
  bool distinguishable = false;  // m_width < m_peak
};

// M_m = sqrt(n_m)/C; DomainError for C <= 0.
double cat_peak_location(double c, int photons);

// Positive root w of [1 + w/M_m]^{2 n_m} = exp(C^2 (2 M_m w + w^2)) / e on
// (0, M_m], by bisection to 1e-10 absolute (at most 200 iterations).
double cat_peak_width(double c, int photons);

PeakReport cat_peak_report(double c, int photons);

// Smallest |M| at which a distribution peaked at M = 0 falls to 1/e of its
// central value. ShapeError for odd N_a, non-unimodal input, or no crossing.
double null_width(const DickeState& state);
double null_width(const SpinQuantum& spin, std::span<const double> populations);

// sqrt(n_m) / sqrt(S C^2).
double cat_squeezing_xi_x(int atom_count, double c, int photons);

// |rho[M, -M]| / sqrt(rho[M, M] rho[-M, -M]). DomainError if 2M is not on
// the lattice, ShapeError if either arm population is <= 1e-300.
double cat_coherence(const AtomicDensityMatrix& rho, int twice_m_arm);

// Lattice projection nearest to a continuous M >= 0, ties toward larger |M|.
int nearest_lattice_twice_m(const SpinQuantum& spin, double m);

// Projections M of the local maxima of a lattice distribution.
std::vector<double> lattice_peaks(const SpinQuantum& spin, std::span<const double> populations);

// 1/e half-width (in M) of the lattice peak at `twice_m_peak`.
double lattice_peak_width(const SpinQuantum& spin, std::span<const double> populations,
                          int twice_m_peak);

inline constexpr double kBisectionTolerance = 1e-10;
inline constexpr int kBisectionMaxIterations = 200;

}  // namespace dicke
