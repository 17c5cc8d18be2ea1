#include "dicke/fock_oracle.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "dicke/errors.hpp"

namespace dicke::oracle {

int minimum_fock_dim(const SpinQuantum& spin, double c) {
  const double cs = c * spin.s();
  return static_cast<int>(std::ceil(cs * cs + 10.0 * cs + 20.0));
}

Eigen::MatrixXcd displacement_propagator(double c, double m, int fock_dim) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(fock_dim, fock_dim);
  for (int n = 0; n + 1 < fock_dim; ++n) {
    const double root = std::sqrt(static_cast<double>(n + 1));
    k(n + 1, n) = root;  // c^dag
    k(n, n + 1) = root;  // c
  }
  // alpha c^dag - conj(alpha) c with alpha = -i C M
  const Eigen::MatrixXcd generator = Complex(0.0, -c * m) * k.cast<Complex>();
  return generator.exp();
}

double boundary_mass(const Eigen::VectorXcd& column, int fock_dim) {
  const int band = std::max(4, fock_dim / 8);
  return column.tail(std::min(band, fock_dim)).squaredNorm();
}

TruncatedJointState oracle_evolve(const DickeState& state, double c, int fock_dim) {
  const auto& spin = state.spin();
  if (spin.twice_s() > kMaxTwiceSpin) throw DomainError("Fock oracle is limited to S <= 6");
  if (!(c >= 0.0)) throw DomainError("C must be >= 0");
  const int needed = minimum_fock_dim(spin, c);
  if (fock_dim < needed) {
    throw DomainError("fock_dim " + std::to_string(fock_dim) + " below required " + std::to_string(needed));
  }
  const auto dim = static_cast<Eigen::Index>(spin.dimension());
  TruncatedJointState joint{spin, fock_dim, Eigen::MatrixXcd::Zero(dim, fock_dim)};
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Eigen::VectorXcd column =
        displacement_propagator(c, spin.m(static_cast<std::size_t>(k)), fock_dim).col(0);
    const double leak = boundary_mass(column, fock_dim);
    if (leak > kMaxLeakage) {
      throw TruncationError("Fock truncation leaks " + std::to_string(leak) + "; enlarge fock_dim");
    }
    joint.amplitudes.row(k) = state.amplitude(static_cast<std::size_t>(k)) * column.transpose();
  }
  return joint;
}

DickeState oracle_project(const TruncatedJointState& joint, int photons) {
  if (photons < 0 || photons >= joint.fock_dim) throw DomainError("photon number outside the Fock space");
  const Eigen::VectorXcd column = joint.amplitudes.col(photons);
  const double weight = column.squaredNorm();
  if (!(weight > 1e-300)) throw ConditioningError("projection onto |n_m> has vanishing weight");
  std::vector<Complex> amps(column.data(), column.data() + column.size());
  return DickeState::normalized(joint.spin, std::move(amps));
}

std::vector<double> oracle_photon_marginal(const TruncatedJointState& joint) {
  std::vector<double> p(static_cast<std::size_t>(joint.fock_dim));
  for (int n = 0; n < joint.fock_dim; ++n) p[static_cast<std::size_t>(n)] = joint.amplitudes.col(n).squaredNorm();
  return p;
}

}  // namespace dicke::oracle
