#include "dicke/pulse_scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dicke/errors.hpp"
#include "dicke/kernels.hpp"
#include "log_poisson.hpp"

namespace dicke {

PulseStrength::PulseStrength(double c) : c_(c) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw DomainError("pulse strength C must be finite and >= 0, got " + std::to_string(c));
  }
}

JointState::JointState(SpinQuantum spin, std::vector<FieldBranch> branches)
    : spin_(spin), branches_(std::move(branches)) {
  if (branches_.size() != spin_.dimension()) {
    throw DomainError("joint state needs one branch per Dicke state");
  }
}

std::vector<double> JointState::populations() const {
  std::vector<double> p(branches_.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(branches_[k].atomic_amplitude);
  return p;
}

std::vector<double> JointState::photon_means() const {
  std::vector<double> r(branches_.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = std::norm(branches_[k].field_alpha);
  return r;
}

JointState apply_pulse(const DickeState& state, PulseStrength c) {
  const auto& spin = state.spin();
  std::vector<FieldBranch> branches(spin.dimension());
  for (std::size_t k = 0; k < branches.size(); ++k) {
    branches[k] = {state.amplitude(k), Complex(0.0, -c.value() * spin.m(k))};
  }
  return JointState(spin, std::move(branches));
}

int default_n_max(const SpinQuantum& spin, double c) {
  const double cs = c * spin.s();
  return static_cast<int>(std::ceil(cs * cs + 10.0 * cs + 20.0));
}

namespace {

std::vector<double> log_of(std::span<const double> weights) {
  std::vector<double> out(weights.size());
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = weights[b] > 0.0 ? std::log(weights[b]) : -std::numeric_limits<double>::infinity();
  }
  return out;
}

template <typename Kernel>
PhotonDistribution tabulate(std::span<const double> weights, std::span<const double> rates,
                            int n_max, Kernel kernel) {
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  if (weights.size() != rates.size()) throw DomainError("weights and rates differ in length");
  const auto log_weights = log_of(weights);
  PhotonDistribution dist;
  dist.n_max = n_max;
  dist.probabilities.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  kernel(kernels::PoissonMixture{log_weights, rates},
         std::span<double>(dist.probabilities));
  double total = 0.0;
  for (double p : dist.probabilities) total += p;
  dist.tail_mass = std::max(0.0, 1.0 - total);
  return dist;
}

}  // namespace

PhotonDistribution poisson_mixture_distribution(std::span<const double> weights,
                                                std::span<const double> rates, int n_max) {
  return tabulate(weights, rates, n_max, [](const auto& m, auto out) { kernels::omp::poisson_mixture(m, out); });
}

PhotonDistribution poisson_mixture_distribution_serial(std::span<const double> weights,
                                                       std::span<const double> rates,
                                                       int n_max) {
  return tabulate(weights, rates, n_max,
                  [](const auto& m, auto out) { kernels::serial::poisson_mixture(m, out); });
}

PhotonDistribution photon_distribution(const JointState& state, int n_max) {
  const auto weights = state.populations();
  const auto rates = state.photon_means();
  return poisson_mixture_distribution(weights, rates, n_max);
}

PhotonDistribution photon_distribution(const JointState& state) {
  double c_max = 0.0;
  const double s = state.spin().s();
  for (const auto& b : state.branches()) c_max = std::max(c_max, std::abs(b.field_alpha) / s);
  return photon_distribution(state, default_n_max(state.spin(), c_max));
}

double log_outcome_probability(std::span<const double> weights, std::span<const double> rates,
                               int photons) {
  if (photons < 0) throw DomainError("photon count must be >= 0");
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double n = photons;
  std::vector<double> terms;
  terms.reserve(weights.size());
  for (std::size_t b = 0; b < weights.size(); ++b) {
    if (!(weights[b] > 0.0)) continue;
    if (rates[b] == 0.0) {
      if (photons == 0) terms.push_back(std::log(weights[b]));
      continue;
    }
    terms.push_back(std::log(weights[b]) + detail::log_poisson_pmf(n, rates[b]));
  }
  if (terms.empty()) return neg_inf;
  const double top = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

PhotonMoments photon_moments_closed_form(int atom_count, double c) {
  if (atom_count < 1) throw DomainError("atom count must be >= 1");
  if (!(c >= 0.0)) throw DomainError("C must be >= 0");
  if (c == 0.0) return {0.0, 0.0};
  const double na = atom_count;
  const double c2 = c * c;
  return {c2 * na / 4.0, c2 * std::sqrt(na / 4.0 * ((na - 1.0) / 2.0 + 1.0 / c2))};
}

PhotonMoments photon_moments_numeric(const PhotonDistribution& dist) {
  if (!(dist.tail_mass < kMaxTailMassForMoments)) {
    throw TruncationError("photon distribution tail mass " + std::to_string(dist.tail_mass) +
                          " too large for moments; raise n_max");
  }
  double mass = 0.0;
  double first = 0.0;
  for (std::size_t n = 0; n < dist.probabilities.size(); ++n) {
    mass += dist.probabilities[n];
    first += static_cast<double>(n) * dist.probabilities[n];
  }
  const double mean = first / mass;
  double second_central = 0.0;
  for (std::size_t n = 0; n < dist.probabilities.size(); ++n) {
    const double d = static_cast<double>(n) - mean;
    second_central += d * d * dist.probabilities[n];
  }
  return {mean, std::sqrt(second_central / mass)};
}

FaradayStatistics faraday_variance_operator(int atom_count, double prefactor) {
  if (atom_count < 1) throw DomainError("atom count must be >= 1");
  // Delta S_z / S = sqrt(N_a/4) / (N_a/2)
  return {0.0, prefactor / std::sqrt(static_cast<double>(atom_count))};
}

}  // namespace dicke
