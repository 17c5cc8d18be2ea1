#include "dicke/physical_params.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "dicke/errors.hpp"
#include "dicke/minimize.hpp"

namespace dicke {

namespace {

constexpr std::array<const char*, 9> kConfigKeys = {
    "gamma", "delta", "wavelength", "area", "length", "density", "N_a", "chi_sq_integral", "N_ph"};

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string("field '") + field + "' must be a positive finite number");
  }
}

void require_non_negative(double value, const char* field) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string("field '") + field + "' must be a non-negative finite number");
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

void validate(const PhysicalConfig& config) {
  require_positive(config.gamma, "gamma");
  require_positive(config.delta, "delta");
  require_positive(config.wavelength, "wavelength");
  require_positive(config.area, "area");
  require_positive(config.length, "length");
  require_positive(config.density, "density");
  if (config.atom_count < 1) throw ConfigError("field 'N_a' must be a positive integer");
  require_non_negative(config.chi_sq_integral, "chi_sq_integral");
  require_non_negative(config.photon_number, "N_ph");
}

std::vector<std::string> advisory_warnings(const PhysicalConfig& config) {
  validate(config);
  std::vector<std::string> warnings;
  const double detuning_ratio = std::abs(config.delta) / config.gamma;
  if (detuning_ratio < 10.0) {
    warnings.push_back("detuning |delta|/gamma = " + fmt(detuning_ratio) +
                       " is below 10; the far-detuned model is marginal");
  }
  const double fresnel = config.area / (config.wavelength * config.length);
  if (fresnel < 0.1 || fresnel > 10.0) {
    warnings.push_back("Fresnel number A/(lambda L) = " + fmt(fresnel) + " is outside [0.1, 10]");
  }
  const double expected_atoms = config.density * config.area * config.length;
  if (std::abs(config.atom_count - expected_atoms) > 0.01 * expected_atoms) {
    warnings.push_back("N_a = " + std::to_string(config.atom_count) +
                       " differs from density*area*length = " + fmt(expected_atoms) + " by more than 1%");
  }
  const auto depths = optical_depths(config);
  if (depths.eta >= 1.0) {
    warnings.push_back("photon loss per atom exceeds 1 (eta = " + fmt(depths.eta) + ")");
  }
  const double c = measurement_strength(config);
  if (c > depths.c_bound) {
    warnings.push_back("C = " + fmt(c) + " exceeds the bound sqrt(d_res/N_a) = " + fmt(depths.c_bound));
  }
  const double c_photons = photon_number_strength(config);
  if (c > 0.0 && c_photons > 0.0 && (c > 2.0 * c_photons || c_photons > 2.0 * c)) {
    warnings.push_back("C from the pulse integral (" + fmt(c) + ") and from the photon number (" +
                       fmt(c_photons) + ") differ by more than a factor of 2");
  }
  return warnings;
}

PhysicalConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("physical config must be a JSON object");
  for (const auto& item : doc.items()) {
    bool known = false;
    for (const char* key : kConfigKeys) known = known || item.key() == key;
    if (!known) throw ConfigError("unknown field '" + item.key() + "' in physical config");
  }
  auto number = [&](const char* key) {
    if (!doc.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    const auto& v = doc.at(key);
    if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
  };
  PhysicalConfig c;
  c.gamma = number("gamma");
  c.delta = number("delta");
  c.wavelength = number("wavelength");
  c.area = number("area");
  c.length = number("length");
  c.density = number("density");
  const double atoms = number("N_a");
  if (atoms != std::floor(atoms) || atoms < 1.0 || atoms > std::numeric_limits<int>::max()) {
    throw ConfigError("field 'N_a' must be a positive integer");
  }
  c.atom_count = static_cast<int>(atoms);
  c.chi_sq_integral = number("chi_sq_integral");
  c.photon_number = number("N_ph");
  validate(c);
  return c;
}

nlohmann::json to_json(const PhysicalConfig& config) {
  return {{"gamma", config.gamma},       {"delta", config.delta},
          {"wavelength", config.wavelength}, {"area", config.area},
          {"length", config.length},     {"density", config.density},
          {"N_a", config.atom_count},    {"chi_sq_integral", config.chi_sq_integral},
          {"N_ph", config.photon_number}};
}

nlohmann::json to_json(const DerivedStrengths& s) {
  return {{"C", s.c}, {"C_spon", s.c_spon}, {"d_res", s.d_res}, {"eta", s.eta}, {"C_bound", s.c_bound}};
}

double c_spon(const PhysicalConfig& config) {
  validate(config);
  return std::sqrt(config.gamma * config.chi_sq_integral / (config.delta * config.delta));
}

double measurement_strength(const PhysicalConfig& config) {
  const double cs = c_spon(config);
  const double solid_angle = config.wavelength * config.wavelength / config.area;
  return std::sqrt(3.0 / (16.0 * std::numbers::pi * std::numbers::pi) * solid_angle * cs * cs);
}

double photon_number_strength(const PhysicalConfig& config) {
  const auto depths = optical_depths(config);
  return config.gamma / config.delta * (depths.d_res / config.atom_count) *
         std::sqrt(config.photon_number);
}

OpticalDepths optical_depths(const PhysicalConfig& config) {
  validate(config);
  OpticalDepths out;
  out.d_res = config.density * config.wavelength * config.wavelength * config.length;
  const double ratio = config.gamma / config.delta;
  out.eta = out.d_res / config.atom_count * ratio * ratio * config.photon_number;
  out.c_bound = std::sqrt(out.d_res / config.atom_count);
  return out;
}

DerivedStrengths derived_strengths(const PhysicalConfig& config) {
  const auto depths = optical_depths(config);
  return {measurement_strength(config), c_spon(config), depths.d_res, depths.eta, depths.c_bound};
}

double spon_identity_ratio(const PhysicalConfig& config) {
  const auto s = derived_strengths(config);
  const double rhs = s.c * s.c * config.atom_count / s.d_res;
  if (!(rhs > 0.0)) throw DomainError("identity ratio undefined for C = 0");
  return s.c_spon * s.c_spon / rhs;
}

double faraday_angle_prefactor(const PhysicalConfig& config, double dipole_sq_over_hbar_eps0) {
  validate(config);
  // 2 D Omega / (Delta c A) with Omega / c = 2 pi / lambda
  return 4.0 * std::numbers::pi * dipole_sq_over_hbar_eps0 /
         (config.wavelength * config.delta * config.area);
}

double faraday_angle(const PhysicalConfig& config, double dipole_sq_over_hbar_eps0, double mean_sz) {
  return faraday_angle_prefactor(config, dipole_sq_over_hbar_eps0) * mean_sz;
}

double rotation_operator_prefactor(const PhysicalConfig& config, double dipole_sq_over_hbar_eps0) {
  validate(config);
  return 2.0 * std::numbers::pi * config.density * config.length * dipole_sq_over_hbar_eps0 /
         (config.wavelength * config.delta);
}

double squeezing_with_decay(double c, int atom_count, double d_res) {
  if (!(c > 0.0)) throw DomainError("squeezing_with_decay needs C > 0");
  if (atom_count < 1) throw DomainError("atom count must be >= 1");
  if (!(d_res > 0.0)) throw DomainError("d_res must be > 0");
  const double s = 0.5 * atom_count;
  return 1.0 / (std::sqrt(s) * c * std::exp(-c * c * atom_count / d_res));
}

bool decay_formula_in_regime(double c, int atom_count) {
  return c * std::sqrt(0.5 * atom_count) > 1.0;
}

OptimalStrength optimal_strength(int atom_count, double d_res) {
  if (atom_count < 1) throw DomainError("atom count must be >= 1");
  if (!(d_res > 0.0)) throw DomainError("d_res must be > 0");
  OptimalStrength out;
  out.c_opt = std::sqrt(d_res / (2.0 * atom_count));
  out.xi_min = 2.0 * std::sqrt(std::numbers::e) / std::sqrt(d_res);
  // ln xi is smooth and convex in ln C.
  auto log_xi = [&](double c) { return std::log(squeezing_with_decay(c, atom_count, d_res)); };
  const auto found = numeric::golden_section_minimize(log_xi, 1e-6 * out.c_opt, 10.0 * out.c_opt, 1e-12);
  out.c_numeric = found.x;
  out.xi_numeric = squeezing_with_decay(found.x, atom_count, d_res);
  if (std::abs(out.c_numeric / out.c_opt - 1.0) > kOptimumRelTolerance) {
    throw ConsistencyError("numerical optimum C = " + fmt(out.c_numeric) +
                           " disagrees with the closed form " + fmt(out.c_opt));
  }
  return out;
}

double inefficiency_optimum(int atom_count, double efficiency) {
  if (atom_count < 1) throw DomainError("atom count must be >= 1");
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) throw DomainError("efficiency must lie in [0, 1]");
  if (efficiency == 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(1.0 - efficiency);
}

}  // namespace dicke
