#pragma once

// Pulse interaction U = exp[-i C (c^dag - c) S_z] and the statistics of the
// scattered photon number. The interaction is diagonal in S_z, so the joint
// atom-field state is held exactly as one coherent field branch per M.

#include <span>
#include <vector>

#include "dicke/spin_basis.hpp"

namespace dicke {

class PulseStrength {
 public:
  explicit PulseStrength(double c);
  double value() const { return c_; }

 private:
  double c_;
};

struct FieldBranch {
  Complex atomic_amplitude;
  Complex field_alpha;  // coherent amplitude of the scattered mode
};

class JointState {
 public:
  JointState(SpinQuantum spin, std::vector<FieldBranch> branches);

  const SpinQuantum& spin() const { return spin_; }
  std::span<const FieldBranch> branches() const { return branches_; }
  const FieldBranch& branch(std::size_t index) const { return branches_[index]; }

  // Reduced atomic populations |a_M|^2 and branch photon means |alpha_M|^2.
  std::vector<double> populations() const;
  std::vector<double> photon_means() const;

 private:
  SpinQuantum spin_;
  std::vector<FieldBranch> branches_;
};

struct PhotonDistribution {
  std::vector<double> probabilities;  // n = 0..n_max
  int n_max = 0;
  double tail_mass = 0.0;  // 1 - sum(probabilities), clamped at 0
};

struct PhotonMoments {
  double mean = 0.0;
  double std = 0.0;
};

struct FaradayStatistics {
  double mean_phi = 0.0;
  double delta_phi = 0.0;
};

// Branches (a_M, -i C M); atomic amplitudes are unchanged.
JointState apply_pulse(const DickeState& state, PulseStrength c);

// ceil(C^2 S^2 + 10 C S + 20): at least 10 sigma above the widest branch.
int default_n_max(const SpinQuantum& spin, double c);

// P(n) = sum_M |a_M|^2 Poisson(n; |alpha_M|^2), n = 0..n_max.
PhotonDistribution photon_distribution(const JointState& state, int n_max);
PhotonDistribution photon_distribution(const JointState& state);
// Same law from branch weights and Poisson rates directly; used for mixed
// states and finite detection efficiency (rates mu |alpha_M|^2).
PhotonDistribution poisson_mixture_distribution(std::span<const double> weights,
                                                std::span<const double> rates, int n_max);
// Serial reference path of the above.
PhotonDistribution poisson_mixture_distribution_serial(std::span<const double> weights,
                                                       std::span<const double> rates,
                                                       int n_max);

// ln P(n) for a single outcome, evaluated by log-sum-exp; -inf when impossible.
double log_outcome_probability(std::span<const double> weights, std::span<const double> rates,
                               int photons);

// <n> = C^2 N_a/4 and Delta n = C^2 sqrt((N_a/4)((N_a-1)/2 + 1/C^2)) for the
// initial coherent spin state. C = 0 gives (0, 0).
PhotonMoments photon_moments_closed_form(int atom_count, double c);

// Moments of a tabulated distribution; TruncationError when tail_mass >= 1e-8.
PhotonMoments photon_moments_numeric(const PhotonDistribution& dist);

// Rotation operator phi = prefactor S_z/S on the initial state:
// mean 0, spread prefactor/sqrt(N_a).
FaradayStatistics faraday_variance_operator(int atom_count, double prefactor);

inline constexpr double kMaxTailMassForMoments = 1e-8;

}  // namespace dicke
