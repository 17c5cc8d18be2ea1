#include "dicke/cat_analysis.hpp"

#include <cmath>
#include <string>

#include "dicke/errors.hpp"
#include "dicke/peaks.hpp"

namespace dicke {

double cat_peak_location(double c, int photons) {
  if (!(c > 0.0)) throw DomainError("cat peak location needs C > 0");
  if (photons < 0) throw DomainError("photon count must be >= 0");
  return std::sqrt(static_cast<double>(photons)) / c;
}

double cat_peak_width(double c, int photons) {
  if (photons < 1) throw DomainError("cat peak width needs n_m >= 1");
  const double m_peak = cat_peak_location(c, photons);
  const double n = photons;
  // Log form of the width equation; positive at w = 0.
  auto f = [&](double w) {
    return 2.0 * n * std::log1p(w / m_peak) - c * c * (2.0 * m_peak * w + w * w) + 1.0;
  };
  double lo = 0.0;
  double hi = m_peak;
  if (!(f(lo) > 0.0 && f(hi) < 0.0)) {
    throw BracketError("cat width equation has no sign change on (0, M_m] for C = " +
                       std::to_string(c) + ", n_m = " + std::to_string(photons));
  }
  for (int it = 0; it < kBisectionMaxIterations && hi - lo > kBisectionTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

PeakReport cat_peak_report(double c, int photons) {
  PeakReport r;
  r.m_peak = cat_peak_location(c, photons);
  r.m_width = photons >= 1 ? cat_peak_width(c, photons) : 0.0;
  r.distinguishable = r.m_width < r.m_peak;
  return r;
}

double null_width(const SpinQuantum& spin, std::span<const double> populations) {
  if (spin.twice_s() % 2 != 0) {
    throw ShapeError("null width needs an M = 0 lattice point (even N_a)");
  }
  const std::size_t center = spin.index_of(0);
  for (std::size_t k = center; k + 1 < populations.size(); ++k) {
    if (populations[k + 1] > populations[k]) throw ShapeError("distribution is not unimodal at M = 0");
  }
  for (std::size_t k = center; k > 0; --k) {
    if (populations[k - 1] > populations[k]) throw ShapeError("distribution is not unimodal at M = 0");
  }
  const double width = peaks::one_over_e_halfwidth(populations, center);
  if (std::isnan(width)) throw ShapeError("distribution does not fall to 1/e within the lattice");
  return width;
}

double null_width(const DickeState& state) {
  const auto p = state.populations();
  return null_width(state.spin(), p);
}

double cat_squeezing_xi_x(int atom_count, double c, int photons) {
  if (!(c > 0.0)) throw DomainError("cat squeezing needs C > 0");
  const double s = 0.5 * SpinQuantum(atom_count).twice_s();
  return std::sqrt(static_cast<double>(photons)) / std::sqrt(s * c * c);
}

double cat_coherence(const AtomicDensityMatrix& rho, int twice_m_arm) {
  const Complex plus = rho.element(twice_m_arm, twice_m_arm);
  const Complex minus = rho.element(-twice_m_arm, -twice_m_arm);
  if (!(plus.real() > 1e-300 && minus.real() > 1e-300)) {
    throw ShapeError("cat arm population vanishes at 2M = " + std::to_string(twice_m_arm));
  }
  return std::abs(rho.element(twice_m_arm, -twice_m_arm)) / std::sqrt(plus.real() * minus.real());
}

int nearest_lattice_twice_m(const SpinQuantum& spin, double m) {
  const double a = std::abs(m);
  int twice;
  if (spin.twice_s() % 2 == 0) {
    twice = 2 * static_cast<int>(std::floor(a + 0.5));
  } else {
    twice = 2 * static_cast<int>(std::floor(a)) + 1;
  }
  twice = std::min(twice, spin.twice_s());
  return m < 0.0 ? -twice : twice;
}

std::vector<double> lattice_peaks(const SpinQuantum& spin, std::span<const double> populations) {
  std::vector<double> out;
  for (auto index : peaks::find_local_maxima(populations)) out.push_back(spin.m(index));
  return out;
}

double lattice_peak_width(const SpinQuantum& spin, std::span<const double> populations,
                          int twice_m_peak) {
  return peaks::one_over_e_halfwidth(populations, spin.index_of(twice_m_peak));
}

}  // namespace dicke
