// End-to-end checks of the headline numerical claims. Prints one PASS/FAIL
// line per criterion and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "dicke/cat_analysis.hpp"
#include "dicke/detection.hpp"
#include "dicke/fock_oracle.hpp"
#include "dicke/peaks.hpp"
#include "dicke/physical_params.hpp"
#include "dicke/pulse_scattering.hpp"
#include "dicke/spin_basis.hpp"
#include "dicke/squeeze_scan.hpp"

using namespace dicke;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

JointState pulsed_initial(int atom_count, double c) {
  return apply_pulse(initial_coherent_spin_state(atom_count), PulseStrength(c));
}

// 1. Photon-number peaks at C^2 M^2 and 1/e half-widths near C M.
void photon_peaks(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto dist = photon_distribution(pulsed_initial(20, 3.0));
  const auto maxima = peaks::find_local_maxima(dist.probabilities);
  std::vector<std::size_t> expected;
  for (std::size_t m = 0; m <= 10; ++m) expected.push_back(9 * m * m);
  out.require(maxima == expected, "maxima differ from {0, 9, 36, ..., 900}");

  out.detail << " maxima=";
  for (auto n : maxima) out.detail << n << ' ';
  out.detail << "| halfwidth_1e/3M:";
  double worst = 0.0;
  for (std::size_t m = 1; m <= 10; ++m) {
    const double target = 3.0 * static_cast<double>(m);
    const double width = peaks::one_over_e_halfwidth(dist.probabilities, 9 * m * m);
    out.detail << ' ' << std::lround(100.0 * width / target) / 100.0;
    worst = std::max(worst, std::isfinite(width) ? rel_diff(width, target) : 1e9);
  }
  out.require(worst <= 0.30, "1/e half-widths deviate from 3M by up to " +
                                  std::to_string(std::lround(100.0 * worst)) + "%");
  out.detail << " | gaussian_sigma/3M:";
  for (std::size_t m = 1; m <= 10; ++m) {
    const double sigma = peaks::log_parabola_sigma(dist.probabilities, 9 * m * m);
    out.detail << ' ' << std::lround(100.0 * sigma / (3.0 * static_cast<double>(m))) / 100.0;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(seconds < 1.0, "runtime above 1 s");
}

// 2. Closed-form photon moments against the tabulated distribution.
void photon_moments(Outcome& out) {
  const auto numeric = photon_moments_numeric(photon_distribution(pulsed_initial(20, 3.0), 2000));
  const auto closed = photon_moments_closed_form(20, 3.0);
  out.detail << " mean " << numeric.mean << " vs " << closed.mean << ", std " << numeric.std << " vs "
             << closed.std;
  out.require(closed.mean == 45.0, "closed-form mean is not 45");
  out.require(rel_diff(numeric.mean, closed.mean) <= 1e-6, "mean");
  out.require(rel_diff(numeric.std, closed.std) <= 1e-6, "std");
}

// 3. Branch representation against the truncated-Fock matrix exponential.
void oracle_equivalence(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  double worst_amp = 0.0;
  double worst_marginal = 0.0;
  int compared = 0;
  for (int twice_s : {2, 4, 6}) {
    for (double c : {0.3, 0.7, 1.0}) {
      const DickeState initial = initial_coherent_spin_state(twice_s);
      const int fock_dim = oracle::minimum_fock_dim(initial.spin(), c);
      const auto joint_fock = oracle::oracle_evolve(initial, c, fock_dim);
      const JointState joint = apply_pulse(initial, PulseStrength(c));
      const auto dist = photon_distribution(joint, fock_dim - 1);
      const auto marginal = oracle::oracle_photon_marginal(joint_fock);
      for (int n = 0; n < fock_dim; ++n) {
        worst_marginal = std::max(worst_marginal, std::abs(marginal[n] - dist.probabilities[n]));
      }
      for (int n = 0; n <= 8; ++n) {
        if (!(dist.probabilities[n] > 1e-12)) continue;
        const DickeState branch = collapse_perfect(joint, n);
        const DickeState fock = oracle::oracle_project(joint_fock, n);
        for (std::size_t k = 0; k < branch.spin().dimension(); ++k) {
          worst_amp = std::max(worst_amp, std::abs(std::abs(branch.amplitude(k)) - std::abs(fock.amplitude(k))));
        }
        ++compared;
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.detail << " outcomes=" << compared << " max|d amp|=" << worst_amp << " max|d P|=" << worst_marginal
             << " time=" << seconds << "s";
  out.require(worst_amp <= 1e-8, "amplitude moduli");
  out.require(worst_marginal <= 1e-8, "photon marginals");
  out.require(seconds < 10.0, "runtime above 10 s");
}

// 4. Null measurement: narrowing, width 1/C, limiting null probability.
void null_measurement(Outcome& out) {
  const double var = spin_moments(collapse_perfect(pulsed_initial(20, 3.0), 0)).var_sz;
  out.detail << " var_Sz=" << var;
  out.require(var < 5.0, "var_Sz not below 5");
  for (double c : {1.0, 2.0}) {
    const double width = null_width(collapse_perfect(pulsed_initial(400, c), 0));
    out.detail << " width(C=" << c << ")=" << width;
    out.require(rel_diff(width, 1.0 / c) <= 0.25, "null width at C=" + std::to_string(c));
  }
  const double p0 = null_probability(pulsed_initial(20, 50.0));
  const double limit = std::sqrt(2.0 / (std::numbers::pi * 20.0));
  out.detail << " P0(C=50)=" << p0 << " limit=" << limit;
  out.require(rel_diff(p0, limit) <= 0.02, "null probability");
}

// 5. Decay-limited optimum.
void decay_optimum(Outcome& out) {
  const std::pair<int, double> cases[] = {{200, 100.0}, {2000, 100.0}, {200, 1000.0}};
  for (const auto& [atoms, d_res] : cases) {
    try {
      const auto opt = optimal_strength(atoms, d_res);
      const double c_err = rel_diff(opt.c_numeric, opt.c_opt);
      const double xi_err = std::abs(opt.xi_numeric - opt.xi_min);
      out.detail << " (" << atoms << "," << d_res << "): dC/C=" << c_err << " dxi=" << xi_err;
      out.require(c_err <= 1e-6, "C_opt");
      out.require(xi_err <= 1e-9, "xi_min");
      out.require(std::abs(opt.xi_min - 2.0 * std::sqrt(std::numbers::e / d_res)) <= 1e-15, "closed form");
    } catch (const std::exception& e) {
      out.require(false, e.what());
    }
  }
}

// 6. Cat arms after n_m = 30 and distinguishability over the grid.
void cat_structure(Outcome& out) {
  const DickeState cat = collapse_perfect(pulsed_initial(20, 3.0), 30);
  const auto arms = lattice_peaks(cat.spin(), cat.populations());
  out.detail << " lattice peaks:";
  for (double m : arms) out.detail << ' ' << m;
  out.require(arms == std::vector<double>{-2.0, 2.0}, "peaks not at M = +-2");
  out.require(cat.amplitude(cat.spin().index_of(0)) == Complex(0.0, 0.0), "M=0 amplitude nonzero");
  double worst = 0.0;
  for (double c : {0.5, 1.0, 2.0, 3.0}) {
    for (int n : {1, 5, 30}) worst = std::max(worst, cat_peak_width(c, n) / cat_peak_location(c, n));
  }
  out.detail << " max w/M_m=" << worst;
  out.require(worst < 1.0, "arm width exceeds location");
}

// 7. Second pulse after a forced n_m = 30.
void sequential(Outcome& out) {
  const std::vector<PulseSpec> pulses = {{3.0, 1.0, 30}, {3.0, 1.0, std::nullopt}};
  const auto result = run_trajectory(initial_coherent_spin_state(20), pulses, 7, true);
  const auto& p = result.pre_pulse_distributions.at(1).probabilities;
  const auto maxima = peaks::find_local_maxima(p);
  double mass = 0.0;
  for (std::size_t n = 6; n <= 96; ++n) mass += p[n];
  out.detail << " maxima:";
  for (auto n : maxima) out.detail << ' ' << n;
  out.detail << " mass[6,96]=" << mass;
  out.require(maxima == std::vector<std::size_t>{36}, "not a single maximum at 36");
  out.require(mass > 0.99, "mass in [6, 96]");
}

// 8. Inefficient detection.
void inefficiency(Outcome& out) {
  const auto grid = make_grid(0.25, 5.0, 0.25);
  const auto xi = scan(grid, [](double c) { return xi_efficiency(20, c, 0.85); });
  const auto best = locate_minimum(grid, xi);
  out.detail << " argmin C=" << best.c << " xi=" << best.xi;
  out.require(best.interior, "minimum on the grid edge");
  out.require(best.c >= 1.5 && best.c <= 3.0, "argmin outside [1.5, 3]");

  double worst = 0.0;
  for (int atoms : {2, 5, 10, 20}) {
    for (double c : {0.5, 1.0, 2.0, 3.0}) {
      const JointState joint = pulsed_initial(atoms, c);
      for (int n = 0; n <= 60; n += 3) {
        if (!(log_outcome_probability(joint.populations(), joint.photon_means(), n) > std::log(1e-300))) continue;
        const auto mixed = collapse_imperfect(joint, DetectionOutcome(n, 1.0)).matrix();
        const DickeState pure = collapse_perfect(joint, n);
        const Eigen::Map<const Eigen::VectorXcd> a(pure.amplitudes().data(),
                                                   static_cast<Eigen::Index>(pure.amplitudes().size()));
        worst = std::max(worst, (mixed - a * a.adjoint()).cwiseAbs().maxCoeff());
      }
    }
  }
  out.detail << " mu=1 max|d rho|=" << worst;
  out.require(worst <= 1e-10, "mu=1 reduction");

  out.detail << " coherence:";
  double previous = 2.0;
  for (double c : {0.5, 1.0, 2.0, 4.0}) {
    const int n = static_cast<int>(std::lround(4.0 * c * c));  // places the arms at M = +-2
    const double coherence = cat_coherence(collapse_imperfect(pulsed_initial(20, c), DetectionOutcome(n, 0.85)), 4);
    out.detail << ' ' << coherence;
    out.require(coherence < previous, "coherence not strictly decreasing");
    previous = coherence;
  }
}

std::vector<int> draw_samples(const JointState& joint, std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<int> samples(static_cast<std::size_t>(count));
  for (auto& s : samples) s = sample_outcome(joint, rng);
  return samples;
}

// 9. Sampler against the exact law; seeded reruns identical.
void sampling(Outcome& out) {
  const JointState joint = pulsed_initial(20, 3.0);
  const auto dist = photon_distribution(joint);
  constexpr int kSamples = 100000;
  const auto samples = draw_samples(joint, 20240601, kSamples);
  std::vector<double> counts(dist.probabilities.size() + 1, 0.0);
  for (int s : samples) counts[std::min<std::size_t>(static_cast<std::size_t>(s), dist.probabilities.size())] += 1.0;

  // Pool consecutive bins until each expects at least 5 counts.
  double chi2 = 0.0;
  int bins = 0;
  double observed = 0.0;
  double expected = 0.0;
  for (std::size_t n = 0; n < dist.probabilities.size(); ++n) {
    observed += counts[n];
    expected += kSamples * dist.probabilities[n];
    if (expected >= 5.0) {
      chi2 += (observed - expected) * (observed - expected) / expected;
      ++bins;
      observed = expected = 0.0;
    }
  }
  observed += counts.back();
  expected += kSamples * dist.tail_mass;
  if (expected > 0.0) {
    chi2 += (observed - expected) * (observed - expected) / expected;
    ++bins;
  }
  const int dof = bins - 1;
  const double p_value = boost::math::gamma_q(0.5 * dof, 0.5 * chi2);
  out.detail << " chi2=" << chi2 << " dof=" << dof << " p=" << p_value;
  out.require(p_value > 0.01, "chi-square rejects at 0.01");
  out.require(draw_samples(joint, 20240601, kSamples) == samples, "seeded rerun differs");

  const std::vector<PulseSpec> pulses = {{3.0, 1.0, std::nullopt}, {1.0, 1.0, std::nullopt}, {2.0, 0.85, std::nullopt}};
  const auto first = to_jsonl(run_trajectory(initial_coherent_spin_state(20), pulses, 99).record);
  const auto second = to_jsonl(run_trajectory(initial_coherent_spin_state(20), pulses, 99).record);
  out.require(first == second, "trajectory JSONL differs between reruns");
}

// 10. Physical-parameter chain over random configurations.
void physical_chain(Outcome& out) {
  std::mt19937_64 engine(12345);
  auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(engine));
  };
  double worst_ratio = 0.0;
  double worst_route = 0.0;
  int bounded = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    PhysicalConfig cfg;
    cfg.gamma = log_uniform(1e6, 1e8);
    cfg.delta = cfg.gamma * log_uniform(1.0, 1e4);
    cfg.wavelength = log_uniform(4e-7, 1.6e-6);
    cfg.area = log_uniform(1e-10, 1e-4);
    cfg.length = log_uniform(1e-4, 1e-1);
    cfg.atom_count = static_cast<int>(log_uniform(10.0, 1e9));
    cfg.density = cfg.atom_count / (cfg.area * cfg.length);
    cfg.photon_number = log_uniform(1.0, 1e14);
    // Pulse integral matching N_ph, so the two routes to C coincide.
    cfg.chi_sq_integral = kSponIdentityConstant * (cfg.wavelength * cfg.wavelength / cfg.area) *
                          cfg.gamma * cfg.photon_number;

    worst_ratio = std::max(worst_ratio, rel_diff(spon_identity_ratio(cfg), kSponIdentityConstant));
    const auto s = derived_strengths(cfg);
    worst_route = std::max(worst_route, rel_diff(s.c, photon_number_strength(cfg)));
    if (s.eta < 1.0) {
      ++bounded;
      out.require(s.c <= s.c_bound * (1.0 + 1e-12), "C above sqrt(d_res/N_a) with eta < 1");
      out.require(photon_number_strength(cfg) <= s.c_bound * (1.0 + 1e-12), "photon-number C above bound");
    }
  }
  out.detail << " configs=2000 eta<1=" << bounded << " max|ratio-16pi^2/3|/(16pi^2/3)=" << worst_ratio
             << " max|C12-C_photon|/C=" << worst_route;
  out.require(worst_ratio <= 1e-6, "pinned identity constant");
  out.require(worst_route <= 1e-9, "routes to C disagree");
  out.require(bounded > 100, "too few eta < 1 samples");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"photon-number peaks and widths (N_a=20, C=3)", photon_peaks},
      {"photon moments closed form vs numeric", photon_moments},
      {"branch model vs truncated-Fock oracle", oracle_equivalence},
      {"null measurement narrowing, width, probability", null_measurement},
      {"decay-limited optimum", decay_optimum},
      {"cat arms and distinguishability", cat_structure},
      {"second pulse after forced n_m=30", sequential},
      {"inefficient detection", inefficiency},
      {"sampler fidelity and determinism", sampling},
      {"physical-parameter chain", physical_chain},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome out;
    try {
      check(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    if (!out.pass) ++failures;
    std::printf("%s %d: %s |%s\n", out.pass ? "PASS" : "FAIL", index, name, out.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
