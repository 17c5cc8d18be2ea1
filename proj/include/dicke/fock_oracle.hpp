#pragma once

// Brute-force reference: atoms tensor a truncated Fock space, evolved by an
// explicit matrix exponential of the displacement to -i C M per Dicke component, and
// measured by projection onto |n>. Shares nothing with the branch-based
// implementation beyond DickeState.

#include <vector>

#include <Eigen/Dense>

#include "dicke/spin_basis.hpp"

namespace dicke::oracle {

struct TruncatedJointState {
  SpinQuantum spin;
  int fock_dim;
  Eigen::MatrixXcd amplitudes;  // rows: Dicke index, cols: photon number
};

inline constexpr int kMaxTwiceSpin = 12;  // S <= 6
inline constexpr double kMaxLeakage = 1e-8;

// ceil((C S)^2 + 10 C S + 20).
int minimum_fock_dim(const SpinQuantum& spin, double c);

// Displacement D(alpha) = exp(alpha c^dag - conj(alpha) c), alpha = -i C M,
// i.e. exp(-i C M (c^dag + c)) on the truncated Fock space (Pade-13 scaling and squaring).
Eigen::MatrixXcd displacement_propagator(double c, double m, int fock_dim);

// Probability in the top max(4, fock_dim/8) Fock levels of a column.
double boundary_mass(const Eigen::VectorXcd& column, int fock_dim);

// DomainError if S > 6 or fock_dim is below minimum_fock_dim; TruncationError
// if any column leaks more than 1e-8 into the boundary band.
TruncatedJointState oracle_evolve(const DickeState& state, double c, int fock_dim);

// Normalised atomic amplitudes proportional to column n_m; ConditioningError
// when its weight is <= 1e-300.
DickeState oracle_project(const TruncatedJointState& joint, int photons);

// P(n) = sum_M |amplitudes[M, n]|^2 for n < fock_dim.
std::vector<double> oracle_photon_marginal(const TruncatedJointState& joint);

}  // namespace dicke::oracle
