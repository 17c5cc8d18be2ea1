#pragma once

// Collective spin states of N_a two-level atoms in the Dicke basis |S, M>,
// S = N_a/2, M = -S..S. Half-integers are carried as doubled integers.

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace dicke {

using Complex = std::complex<double>;

class SpinQuantum {
 public:
  explicit SpinQuantum(int atom_count);

  int atom_count() const { return atom_count_; }
  int twice_s() const { return atom_count_; }
  double s() const { return 0.5 * atom_count_; }
  std::size_t dimension() const { return static_cast<std::size_t>(atom_count_) + 1; }

  // Basis index k = 0..N_a maps to M = k - S.
  int twice_m(std::size_t index) const { return 2 * static_cast<int>(index) - atom_count_; }
  double m(std::size_t index) const { return 0.5 * twice_m(index); }
  // Throws DomainError when twice_m is outside -2S..2S or has the wrong parity.
  std::size_t index_of(int twice_m) const;
  bool contains(int twice_m) const;

  // sqrt(S(S+1) - M(M+1)): matrix element <S,M+1|S_+|S,M>.
  double raising_coefficient(std::size_t index) const;

  bool operator==(const SpinQuantum&) const = default;

 private:
  int atom_count_;
};

class DickeState {
 public:
  // Takes amplitudes as given; size must equal spin.dimension().
  DickeState(SpinQuantum spin, std::vector<Complex> amplitudes);

  // Rescales the amplitudes to unit norm; throws DomainError on a zero vector.
  static DickeState normalized(SpinQuantum spin, std::vector<Complex> amplitudes);
  // |S, M> basis vector.
  static DickeState basis(SpinQuantum spin, int twice_m);

  const SpinQuantum& spin() const { return spin_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_[index]; }
  double norm_squared() const;
  // |amplitude_M|^2 over the basis.
  std::vector<double> populations() const;

 private:
  SpinQuantum spin_;
  std::vector<Complex> amplitudes_;
};

enum class Axis { x, y, z };

struct SpinMoments {
  double mean_sx = 0.0;
  double mean_sy = 0.0;
  double mean_sz = 0.0;
  double var_sz = 0.0;
  double var_sy = 0.0;
  double mean_spin_length = 0.0;
  // Symmetrized covariance <{S_i, S_j}>/2 - <S_i><S_j>, i, j in (x, y, z).
  std::array<std::array<double, 3>, 3> covariance{};
};

// ln A(S,M), A(S,M) = 2^-S sqrt((2S)! / ((S+M)! (S-M)!)).
double log_binomial_amplitude(int twice_s, int twice_m);

// The S_x = S eigenstate expanded over S_z eigenstates with amplitudes A(S,M).
DickeState initial_coherent_spin_state(int atom_count);

// S_i applied to an amplitude vector (tridiagonal for x, y; diagonal for z).
std::vector<Complex> apply_spin_operator(Axis axis, const SpinQuantum& spin,
                                         std::span<const Complex> amplitudes);

// Requires a normalized state (tolerance 1e-9), else ContractViolation.
SpinMoments spin_moments(const DickeState& state);

// Smallest variance orthogonal to the mean-spin direction: the lower
// eigenvalue of the 2x2 covariance block in the plane normal to <S>.
// Throws SingularStateError when |<S>| < kMinMeanSpin.
double orthogonal_variance(const SpinMoments& moments);

// xi = sqrt(2S) * dS_perp / |<S>|.
double squeezing_parameter(const SpinMoments& moments, const SpinQuantum& spin);
double squeezing_parameter(const DickeState& state);

// Mean spin after spontaneous-emission decoherence: <S_x> exp(-C_spon^2).
double mean_spin_with_decay(double bare_mean_sx, double c_spon);

inline constexpr double kMinMeanSpin = 1e-9;
inline constexpr double kNormTolerance = 1e-9;

}  // namespace dicke
