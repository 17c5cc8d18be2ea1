#include "dicke/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dicke/errors.hpp"
#include "dicke/kernels.hpp"

namespace dicke {

namespace {

const double kLogMinConditioning = std::log(kMinConditioningProbability);

// Tridiagonal spin operator: sub[k] = S[k+1][k], super[k] = S[k][k+1].
struct Tridiagonal {
  std::vector<Complex> diag;
  std::vector<Complex> sub;
  std::vector<Complex> super;
};

Tridiagonal spin_operator(Axis axis, const SpinQuantum& spin) {
  const std::size_t dim = spin.dimension();
  Tridiagonal op{std::vector<Complex>(dim), std::vector<Complex>(dim > 0 ? dim - 1 : 0),
                 std::vector<Complex>(dim > 0 ? dim - 1 : 0)};
  if (axis == Axis::z) {
    for (std::size_t k = 0; k < dim; ++k) op.diag[k] = spin.m(k);
    return op;
  }
  const Complex plus = axis == Axis::x ? Complex(0.5, 0.0) : Complex(0.0, -0.5);
  const Complex minus = axis == Axis::x ? Complex(0.5, 0.0) : Complex(0.0, 0.5);
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    const double c = spin.raising_coefficient(k);
    op.sub[k] = plus * c;
    op.super[k] = minus * c;
  }
  return op;
}

// Element S[row][col] of a tridiagonal operator.
Complex op_element(const Tridiagonal& op, Eigen::Index row, Eigen::Index col) {
  const auto r = static_cast<std::size_t>(row);
  const auto c = static_cast<std::size_t>(col);
  if (row == col) return op.diag[r];
  if (row == col + 1) return op.sub[c];
  if (col == row + 1) return op.super[r];
  return {0.0, 0.0};
}

// (rho S)[a][c] for |a - c| <= 1 only.
Complex rho_times_op(const Eigen::MatrixXcd& rho, const Tridiagonal& op, Eigen::Index a,
                     Eigen::Index c) {
  const Eigen::Index dim = rho.rows();
  Complex sum = 0.0;
  for (Eigen::Index b = std::max<Eigen::Index>(0, c - 1); b <= std::min(dim - 1, c + 1); ++b) {
    sum += rho(a, b) * op_element(op, b, c);
  }
  return sum;
}

// Tr(rho S_i S_j) using band structure, O(dim).
Complex trace_rho_op_op(const Eigen::MatrixXcd& rho, const Tridiagonal& si, const Tridiagonal& sj) {
  const Eigen::Index dim = rho.rows();
  Complex sum = 0.0;
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index c = std::max<Eigen::Index>(0, a - 1); c <= std::min(dim - 1, a + 1); ++c) {
      sum += rho_times_op(rho, si, a, c) * op_element(sj, c, a);
    }
  }
  return sum;
}

Complex trace_rho_op(const Eigen::MatrixXcd& rho, const Tridiagonal& op) {
  const Eigen::Index dim = rho.rows();
  Complex sum = 0.0;
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index c = std::max<Eigen::Index>(0, a - 1); c <= std::min(dim - 1, a + 1); ++c) {
      sum += rho(a, c) * op_element(op, c, a);
    }
  }
  return sum;
}

std::vector<Complex> pulse_alphas(const SpinQuantum& spin, double c) {
  std::vector<Complex> alpha(spin.dimension());
  for (std::size_t k = 0; k < alpha.size(); ++k) alpha[k] = Complex(0.0, -c * spin.m(k));
  return alpha;
}

// log of sum_M w_M |alpha_M|^{2n} exp(-mu |alpha_M|^2).
double log_printed_denominator(std::span<const double> weights, std::span<const Complex> alpha,
                               int photons, double efficiency) {
  std::vector<double> terms;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] > 0.0)) continue;
    const double r = std::norm(alpha[k]);
    if (photons > 0 && r == 0.0) continue;
    const double log_power = photons > 0 ? photons * std::log(r) : 0.0;
    terms.push_back(std::log(weights[k]) + log_power - efficiency * r);
  }
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

AtomicDensityMatrix apply_detection_kernel(const SpinQuantum& spin, const Eigen::MatrixXcd& rho_in,
                                           std::span<const Complex> alpha,
                                           DetectionOutcome outcome) {
  kernels::MeasurementKernel kernel{&rho_in, alpha, outcome.photons, outcome.efficiency, 0.0};
  kernel.log_shift = kernels::measurement_log_scale(kernel);
  if (!std::isfinite(kernel.log_shift)) {
    throw ConditioningError("outcome n_m = " + std::to_string(outcome.photons) +
                            " has zero weight in every branch");
  }
  Eigen::MatrixXcd out;
  kernels::omp::measurement(kernel, out);
  const double trace = out.trace().real();
  if (!(trace > 0.0)) throw ConditioningError("collapsed density matrix has zero trace");
  out /= trace;
  return AtomicDensityMatrix(spin, std::move(out));
}

std::vector<double> clamp_populations(const Eigen::MatrixXcd& rho) {
  std::vector<double> w(static_cast<std::size_t>(rho.rows()));
  for (Eigen::Index k = 0; k < rho.rows(); ++k) w[static_cast<std::size_t>(k)] = std::max(0.0, rho(k, k).real());
  return w;
}

int draw(std::span<const double> weights, std::span<const double> rates, Rng& rng) {
  const std::size_t branch = sample_categorical(rng, weights);
  return static_cast<int>(sample_poisson(rng, rates[branch]));
}

}  // namespace

DetectionOutcome::DetectionOutcome(int photons_, double efficiency_)
    : photons(photons_), efficiency(efficiency_) {
  if (photons < 0) throw DomainError("photon count must be >= 0");
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw DomainError("detection efficiency must lie in [0, 1], got " + std::to_string(efficiency));
  }
}

AtomicDensityMatrix::AtomicDensityMatrix(SpinQuantum spin, Eigen::MatrixXcd rho)
    : spin_(spin), rho_(std::move(rho)) {
  const auto dim = static_cast<Eigen::Index>(spin_.dimension());
  if (rho_.rows() != dim || rho_.cols() != dim) {
    throw DomainError("density matrix must be (N_a+1) x (N_a+1)");
  }
}

AtomicDensityMatrix AtomicDensityMatrix::from_pure(const DickeState& state) {
  const auto amps = state.amplitudes();
  Eigen::Map<const Eigen::VectorXcd> psi(amps.data(), static_cast<Eigen::Index>(amps.size()));
  return AtomicDensityMatrix(state.spin(), psi * psi.adjoint());
}

Complex AtomicDensityMatrix::element(int twice_m, int twice_n) const {
  return rho_(static_cast<Eigen::Index>(spin_.index_of(twice_m)),
              static_cast<Eigen::Index>(spin_.index_of(twice_n)));
}

std::vector<double> AtomicDensityMatrix::populations() const {
  std::vector<double> p(spin_.dimension());
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = rho_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();
  }
  return p;
}

DensityMatrixHealth check_health(const AtomicDensityMatrix& rho) {
  const auto& m = rho.matrix();
  DensityMatrixHealth h;
  h.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
  h.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  const Eigen::MatrixXcd hermitian = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  h.min_eigenvalue = solver.eigenvalues().minCoeff();
  return h;
}

DickeState collapse_perfect(const JointState& state, int photons) {
  if (photons < 0) throw DomainError("photon count must be >= 0");
  const auto weights = state.populations();
  const auto rates = state.photon_means();
  if (log_outcome_probability(weights, rates, photons) <= kLogMinConditioning) {
    throw ConditioningError("outcome n_m = " + std::to_string(photons) +
                            " has probability below 1e-300");
  }
  const double n = photons;
  const std::size_t dim = state.spin().dimension();
  std::vector<double> log_mag(dim, -std::numeric_limits<double>::infinity());
  std::vector<double> phase(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto& b = state.branch(k);
    if (b.atomic_amplitude == Complex(0.0, 0.0)) continue;
    if (photons > 0 && b.field_alpha == Complex(0.0, 0.0)) continue;
    const double r = std::abs(b.field_alpha);
    log_mag[k] = std::log(std::abs(b.atomic_amplitude)) - 0.5 * r * r +
                 (photons > 0 ? n * std::log(r) : 0.0);
    phase[k] = std::arg(b.atomic_amplitude) + (photons > 0 ? n * std::arg(b.field_alpha) : 0.0);
  }
  const double top = *std::max_element(log_mag.begin(), log_mag.end());
  std::vector<Complex> amplitudes(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (std::isfinite(log_mag[k])) amplitudes[k] = std::polar(std::exp(log_mag[k] - top), phase[k]);
  }
  return DickeState::normalized(state.spin(), std::move(amplitudes));
}

AtomicDensityMatrix collapse_imperfect(const JointState& state, DetectionOutcome outcome) {
  const auto weights = state.populations();
  std::vector<Complex> alpha(state.spin().dimension());
  std::vector<Complex> amps(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    alpha[k] = state.branch(k).field_alpha;
    amps[k] = state.branch(k).atomic_amplitude;
  }
  if (log_printed_denominator(weights, alpha, outcome.photons, outcome.efficiency) <=
      kLogMinConditioning) {
    throw ConditioningError("outcome n_m = " + std::to_string(outcome.photons) +
                            " has vanishing conditional weight");
  }
  Eigen::Map<const Eigen::VectorXcd> psi(amps.data(), static_cast<Eigen::Index>(amps.size()));
  const Eigen::MatrixXcd rho_in = psi * psi.adjoint();
  return apply_detection_kernel(state.spin(), rho_in, alpha, outcome);
}

AtomicDensityMatrix measure(const AtomicDensityMatrix& rho, PulseStrength c,
                            DetectionOutcome outcome) {
  const auto alpha = pulse_alphas(rho.spin(), c.value());
  const auto weights = clamp_populations(rho.matrix());
  if (log_printed_denominator(weights, alpha, outcome.photons, outcome.efficiency) <=
      kLogMinConditioning) {
    throw ConditioningError("outcome n_m = " + std::to_string(outcome.photons) +
                            " has vanishing conditional weight");
  }
  return apply_detection_kernel(rho.spin(), rho.matrix(), alpha, outcome);
}

double variance_sz_from_rho(const AtomicDensityMatrix& rho) {
  const auto& spin = rho.spin();
  double first = 0.0;
  double second = 0.0;
  double trace = 0.0;
  for (std::size_t k = 0; k < spin.dimension(); ++k) {
    const double p = rho.matrix()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();
    const double m = spin.m(k);
    trace += p;
    first += p * m;
    second += p * m * m;
  }
  first /= trace;
  second /= trace;
  return std::max(0.0, second - first * first);
}

SpinMoments spin_moments(const AtomicDensityMatrix& rho) {
  const auto& spin = rho.spin();
  const auto& m = rho.matrix();
  const std::array<Tridiagonal, 3> ops = {spin_operator(Axis::x, spin), spin_operator(Axis::y, spin),
                                          spin_operator(Axis::z, spin)};
  std::array<double, 3> mean{};
  for (int i = 0; i < 3; ++i) mean[i] = trace_rho_op(m, ops[i]).real();
  SpinMoments out;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const double c = trace_rho_op_op(m, ops[i], ops[j]).real() - mean[i] * mean[j];
      out.covariance[i][j] = c;
      out.covariance[j][i] = c;
    }
  }
  out.mean_sx = mean[0];
  out.mean_sy = mean[1];
  out.mean_sz = mean[2];
  out.var_sy = std::max(0.0, out.covariance[1][1]);
  out.var_sz = std::max(0.0, out.covariance[2][2]);
  out.mean_spin_length = std::sqrt(mean[0] * mean[0] + mean[1] * mean[1] + mean[2] * mean[2]);
  return out;
}

double squeezing_parameter(const AtomicDensityMatrix& rho) {
  return squeezing_parameter(spin_moments(rho), rho.spin());
}

double null_probability(const JointState& state) {
  double p = 0.0;
  for (const auto& b : state.branches()) {
    p += std::norm(b.atomic_amplitude) * std::exp(-std::norm(b.field_alpha));
  }
  return p;
}

int sample_outcome(const JointState& state, Rng& rng) {
  const auto weights = state.populations();
  const auto rates = state.photon_means();
  return draw(weights, rates, rng);
}

int sample_outcome(const AtomicDensityMatrix& rho, PulseStrength c, double efficiency, Rng& rng) {
  const auto weights = clamp_populations(rho.matrix());
  std::vector<double> rates(weights.size());
  for (std::size_t k = 0; k < rates.size(); ++k) {
    const double cm = c.value() * rho.spin().m(k);
    rates[k] = efficiency * cm * cm;
  }
  return draw(weights, rates, rng);
}

namespace {

std::optional<double> xi_or_empty(const SpinMoments& moments, const SpinQuantum& spin) {
  if (moments.mean_spin_length < kMinMeanSpin) return std::nullopt;
  return squeezing_parameter(moments, spin);
}

}  // namespace

TrajectoryResult run_trajectory(const DickeState& initial, const std::vector<PulseSpec>& pulses,
                                std::uint64_t seed, bool keep_distributions) {
  Rng rng(seed);
  TrajectoryResult result{TrajectoryRecord{seed, {}}, initial, {}};
  const bool pure = std::all_of(pulses.begin(), pulses.end(),
                                [](const PulseSpec& p) { return p.efficiency == 1.0; });
  const SpinQuantum spin = initial.spin();

  if (pure) {
    DickeState state = initial;
    for (const auto& item : pulses) {
      const JointState joint = apply_pulse(state, PulseStrength(item.c));
      if (keep_distributions) result.pre_pulse_distributions.push_back(photon_distribution(joint));
      const int n = item.forced_photons ? *item.forced_photons : sample_outcome(joint, rng);
      state = collapse_perfect(joint, n);
      const auto moments = spin_moments(state);
      result.record.pulses.push_back({item.c, 1.0, n, moments.var_sz, xi_or_empty(moments, spin)});
    }
    result.final_state = state;
    return result;
  }

  AtomicDensityMatrix rho = AtomicDensityMatrix::from_pure(initial);
  for (const auto& item : pulses) {
    const PulseStrength c(item.c);
    const DetectionOutcome probe(0, item.efficiency);
    if (keep_distributions) {
      const auto weights = clamp_populations(rho.matrix());
      std::vector<double> rates(weights.size());
      for (std::size_t k = 0; k < rates.size(); ++k) {
        const double cm = item.c * spin.m(k);
        rates[k] = item.efficiency * cm * cm;
      }
      result.pre_pulse_distributions.push_back(
          poisson_mixture_distribution(weights, rates, default_n_max(spin, item.c)));
    }
    const int n = item.forced_photons ? *item.forced_photons
                                      : sample_outcome(rho, c, probe.efficiency, rng);
    rho = measure(rho, c, DetectionOutcome(n, item.efficiency));
    const auto moments = spin_moments(rho);
    result.record.pulses.push_back(
        {item.c, item.efficiency, n, variance_sz_from_rho(rho), xi_or_empty(moments, spin)});
  }
  result.final_state = rho;
  return result;
}

std::string to_jsonl(const TrajectoryRecord& record) {
  std::ostringstream out;
  for (std::size_t i = 0; i < record.pulses.size(); ++i) {
    const auto& p = record.pulses[i];
    nlohmann::ordered_json line;
    line["seed"] = record.seed;
    line["pulse_index"] = i;
    line["C"] = p.c;
    line["mu"] = p.efficiency;
    line["n_m"] = p.photons;
    line["post_var_Sz"] = p.post_var_sz;
    line["post_xi"] = p.post_xi ? nlohmann::ordered_json(*p.post_xi) : nlohmann::ordered_json(nullptr);
    out << line.dump() << '\n';
  }
  return out.str();
}

}  // namespace dicke
