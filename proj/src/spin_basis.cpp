#include "dicke/spin_basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

SpinQuantum::SpinQuantum(int atom_count) : atom_count_(atom_count) {
  if (atom_count < 1) {
    throw DomainError("atom count must be >= 1, got " + std::to_string(atom_count));
  }
}

bool SpinQuantum::contains(int twice_m) const {
  return std::abs(twice_m) <= atom_count_ && ((twice_m + atom_count_) % 2 == 0);
}

std::size_t SpinQuantum::index_of(int twice_m) const {
  if (!contains(twice_m)) {
    throw DomainError("2M = " + std::to_string(twice_m) + " is not a projection of 2S = " +
                      std::to_string(atom_count_));
  }
  return static_cast<std::size_t>((twice_m + atom_count_) / 2);
}

double SpinQuantum::raising_coefficient(std::size_t index) const {
  const long long s2 = atom_count_;
  const long long m2 = twice_m(index);
  // 4 [S(S+1) - M(M+1)] in integers.
  const long long four_c2 = s2 * (s2 + 2) - m2 * (m2 + 2);
  return four_c2 > 0 ? 0.5 * std::sqrt(static_cast<double>(four_c2)) : 0.0;
}

DickeState::DickeState(SpinQuantum spin, std::vector<Complex> amplitudes)
    : spin_(spin), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != spin_.dimension()) {
    throw DomainError("amplitude vector has " + std::to_string(amplitudes_.size()) +
                      " entries, Dicke dimension is " + std::to_string(spin_.dimension()));
  }
}

DickeState DickeState::normalized(SpinQuantum spin, std::vector<Complex> amplitudes) {
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw DomainError("cannot normalize a zero or non-finite amplitude vector");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : amplitudes) a *= scale;
  return DickeState(spin, std::move(amplitudes));
}

DickeState DickeState::basis(SpinQuantum spin, int twice_m) {
  std::vector<Complex> amplitudes(spin.dimension());
  amplitudes[spin.index_of(twice_m)] = 1.0;
  return DickeState(spin, std::move(amplitudes));
}

double DickeState::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

std::vector<double> DickeState::populations() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(amplitudes_[k]);
  return p;
}

double log_binomial_amplitude(int twice_s, int twice_m) {
  if (twice_s < 0 || std::abs(twice_m) > twice_s || (twice_s + twice_m) % 2 != 0) {
    throw DomainError("log_binomial_amplitude: 2M = " + std::to_string(twice_m) +
                      " out of range for 2S = " + std::to_string(twice_s));
  }
  // |M| keeps A(S,M) and A(S,-M) bitwise identical.
  const int abs_m2 = std::abs(twice_m);
  const double up = 0.5 * (twice_s + abs_m2);
  const double down = 0.5 * (twice_s - abs_m2);
  return 0.5 * (std::lgamma(twice_s + 1.0) - std::lgamma(up + 1.0) - std::lgamma(down + 1.0)) -
         0.5 * twice_s * std::numbers::ln2;
}

DickeState initial_coherent_spin_state(int atom_count) {
  const SpinQuantum spin(atom_count);
  std::vector<Complex> amplitudes(spin.dimension());
  for (std::size_t k = 0; k < amplitudes.size(); ++k) {
    amplitudes[k] = std::exp(log_binomial_amplitude(spin.twice_s(), spin.twice_m(k)));
  }
  return DickeState::normalized(spin, std::move(amplitudes));
}

std::vector<Complex> apply_spin_operator(Axis axis, const SpinQuantum& spin,
                                         std::span<const Complex> psi) {
  const std::size_t dim = spin.dimension();
  std::vector<Complex> out(dim);
  if (axis == Axis::z) {
    for (std::size_t k = 0; k < dim; ++k) out[k] = spin.m(k) * psi[k];
    return out;
  }
  // S_x = (S+ + S-)/2, S_y = (S+ - S-)/(2i)
  const Complex minus_coeff = axis == Axis::x ? Complex(0.5, 0.0) : Complex(0.0, 0.5);
  const Complex plus_coeff = axis == Axis::x ? Complex(0.5, 0.0) : Complex(0.0, -0.5);
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    const double c = spin.raising_coefficient(k);
    out[k + 1] += plus_coeff * c * psi[k];   // S+ |M> -> |M+1>
    out[k] += minus_coeff * c * psi[k + 1];  // S- |M+1> -> |M>
  }
  return out;
}

namespace {

double inner_real(std::span<const Complex> a, std::span<const Complex> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += (std::conj(a[k]) * b[k]).real();
  return sum;
}

}  // namespace

SpinMoments spin_moments(const DickeState& state) {
  const double norm2 = state.norm_squared();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw ContractViolation("spin_moments: state norm^2 = " + std::to_string(norm2) +
                            " deviates from 1");
  }
  const auto& spin = state.spin();
  const auto psi = state.amplitudes();
  const std::array<std::vector<Complex>, 3> applied = {
      apply_spin_operator(Axis::x, spin, psi), apply_spin_operator(Axis::y, spin, psi),
      apply_spin_operator(Axis::z, spin, psi)};

  std::array<double, 3> mean{};
  for (int i = 0; i < 3; ++i) mean[i] = inner_real(psi, applied[i]);

  SpinMoments m;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      // Re <S_i psi | S_j psi> = <{S_i, S_j}>/2 for Hermitian S_i.
      const double c = inner_real(applied[i], applied[j]) - mean[i] * mean[j];
      m.covariance[i][j] = c;
      m.covariance[j][i] = c;
    }
  }
  m.mean_sx = mean[0];
  m.mean_sy = mean[1];
  m.mean_sz = mean[2];
  m.var_sy = std::max(0.0, m.covariance[1][1]);
  m.var_sz = std::max(0.0, m.covariance[2][2]);
  m.mean_spin_length = std::sqrt(mean[0] * mean[0] + mean[1] * mean[1] + mean[2] * mean[2]);
  return m;
}

double orthogonal_variance(const SpinMoments& moments) {
  const double len = moments.mean_spin_length;
  if (!(len >= kMinMeanSpin)) {
    throw SingularStateError("mean spin length " + std::to_string(len) +
                             " too small for an orthogonal direction");
  }
  const std::array<double, 3> n = {moments.mean_sx / len, moments.mean_sy / len,
                                   moments.mean_sz / len};
  // Orthonormal pair spanning the plane normal to n; seeded with the basis axis
  // least aligned with n.
  std::size_t seed_axis = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(n[i]) < std::abs(n[seed_axis])) seed_axis = i;
  }
  std::array<double, 3> e1{};
  e1[seed_axis] = 1.0;
  const double proj = n[seed_axis];
  double e1_norm = 0.0;
  for (int i = 0; i < 3; ++i) {
    e1[i] -= proj * n[i];
    e1_norm += e1[i] * e1[i];
  }
  e1_norm = std::sqrt(e1_norm);
  for (auto& v : e1) v /= e1_norm;
  const std::array<double, 3> e2 = {n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2],
                                    n[0] * e1[1] - n[1] * e1[0]};

  auto quad = [&](const std::array<double, 3>& u, const std::array<double, 3>& v) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += u[i] * moments.covariance[i][j] * v[j];
    return s;
  };
  const double a = quad(e1, e1);
  const double b = quad(e1, e2);
  const double d = quad(e2, e2);
  // det / upper avoids cancellation when one variance is far below the other
  const double upper = 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  if (!(upper > 0.0)) return 0.0;
  return std::max(0.0, (a * d - b * b) / upper);
}

double squeezing_parameter(const SpinMoments& moments, const SpinQuantum& spin) {
  const double var_perp = orthogonal_variance(moments);
  return std::sqrt(2.0 * spin.s()) * std::sqrt(var_perp) / moments.mean_spin_length;
}

double squeezing_parameter(const DickeState& state) {
  return squeezing_parameter(spin_moments(state), state.spin());
}

double mean_spin_with_decay(double bare_mean_sx, double c_spon) {
  if (c_spon < 0.0) throw DomainError("C_spon must be >= 0");
  return bare_mean_sx * std::exp(-c_spon * c_spon);
}

}  // namespace dicke
