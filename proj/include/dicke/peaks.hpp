#pragma once

// Peak analysis of sampled non-negative profiles (photon-number
// distributions, Dicke-lattice populations).

#include <span>
#include <vector>

namespace dicke::peaks {

// Adjacent values within this relative difference form a plateau. A Poisson
// branch with integer mean lambda has equal maxima at lambda - 1 and lambda.
inline constexpr double kTieTolerance = 1e-6;

// Indices of local maxima. A plateau of tied values counts once, reported at
// its largest index, and is a maximum when both outside neighbours are lower.
std::vector<std::size_t> find_local_maxima(std::span<const double> values,
                                           double tie_tolerance = kTieTolerance);

// Distance from `peak` to where the profile falls to values[peak]/e, walking
// in `direction` (+1 or -1). Between lattice points ln(value) is interpolated
// linearly in squared distance, which is exact for a Gaussian profile.
// NaN if the profile rises again or ends first.
double one_over_e_distance(std::span<const double> values, std::size_t peak, int direction);

// Mean of the two one-sided 1/e distances (one side if the other is NaN).
double one_over_e_halfwidth(std::span<const double> values, std::size_t peak);

// Standard deviation of the Gaussian through ln(values) at peak-1, peak,
// peak+1. NaN at the array edges or when the curvature is not negative.
double log_parabola_sigma(std::span<const double> values, std::size_t peak);

}  // namespace dicke::peaks
