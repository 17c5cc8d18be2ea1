#pragma once

// Conditional atomic states after counting n photons of the scattered mode,
// for perfect (mu = 1) and inefficient (mu < 1) detection, outcome sampling,
// and sequences of pulses.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dicke/poisson_sampler.hpp"
#include "dicke/pulse_scattering.hpp"
#include "dicke/spin_basis.hpp"

namespace dicke {

// Conditioning probabilities below this are treated as impossible outcomes.
inline constexpr double kMinConditioningProbability = 1e-300;

struct DetectionOutcome {
  DetectionOutcome(int photons, double efficiency = 1.0);
  int photons;
  double efficiency;  // mu = 1 - exp(-lambda T_d)
};

class AtomicDensityMatrix {
 public:
  AtomicDensityMatrix(SpinQuantum spin, Eigen::MatrixXcd rho);
  static AtomicDensityMatrix from_pure(const DickeState& state);

  const SpinQuantum& spin() const { return spin_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  // rho[M, N] addressed by doubled projections.
  Complex element(int twice_m, int twice_n) const;
  std::vector<double> populations() const;

 private:
  SpinQuantum spin_;
  Eigen::MatrixXcd rho_;
};

struct DensityMatrixHealth {
  double hermiticity_error = 0.0;  // max |rho - rho^dag|
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;
};
DensityMatrixHealth check_health(const AtomicDensityMatrix& rho);

// Amplitudes proportional to a_M alpha_M^n exp(-|alpha_M|^2/2); the field is
// left in vacuum. ConditioningError when P(n) <= 1e-300.
DickeState collapse_perfect(const JointState& state, int photons);

// rho_MN proportional to a_M a_N^* alpha_M^n alpha_N^{*n} exp((1-mu) alpha_N^* alpha_M)
// exp(-(|alpha_M|^2 + |alpha_N|^2)/2), normalised to unit trace.
AtomicDensityMatrix collapse_imperfect(const JointState& state, DetectionOutcome outcome);

// Pulse of strength C on a mixed state followed by detection; the same kernel
// as collapse_imperfect applied to rho (it is linear in rho).
AtomicDensityMatrix measure(const AtomicDensityMatrix& rho, PulseStrength c,
                            DetectionOutcome outcome);

double variance_sz_from_rho(const AtomicDensityMatrix& rho);
SpinMoments spin_moments(const AtomicDensityMatrix& rho);
double squeezing_parameter(const AtomicDensityMatrix& rho);

// P(0) = sum_M |a_M|^2 exp(-|alpha_M|^2).
double null_probability(const JointState& state);

// Draws M with probability |a_M|^2, then n ~ Poisson(|alpha_M|^2).
int sample_outcome(const JointState& state, Rng& rng);
// Same for a mixed state probed at strength C with efficiency mu:
// M from diag(rho), n ~ Poisson(mu C^2 M^2).
int sample_outcome(const AtomicDensityMatrix& rho, PulseStrength c, double efficiency, Rng& rng);

struct PulseSpec {
  double c = 0.0;
  double efficiency = 1.0;
  std::optional<int> forced_photons;
};

struct PulseRecord {
  double c = 0.0;
  double efficiency = 1.0;
  int photons = 0;
  double post_var_sz = 0.0;
  std::optional<double> post_xi;  // empty when |<S>| < 1e-9
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::vector<PulseRecord> pulses;
};

struct TrajectoryResult {
  TrajectoryRecord record;
  std::variant<DickeState, AtomicDensityMatrix> final_state;
  // Photon-number law seen by each pulse before its detection (when requested).
  std::vector<PhotonDistribution> pre_pulse_distributions;
};

// All pulses with mu = 1 propagate the pure state; otherwise the whole run
// carries the density matrix. Forced pulses do not consume random numbers.
TrajectoryResult run_trajectory(const DickeState& initial, const std::vector<PulseSpec>& pulses,
                                std::uint64_t seed, bool keep_distributions = false);

// One JSON object per pulse; keys in the order
// seed, pulse_index, C, mu, n_m, post_var_Sz, post_xi.
std::string to_jsonl(const TrajectoryRecord& record);

}  // namespace dicke
