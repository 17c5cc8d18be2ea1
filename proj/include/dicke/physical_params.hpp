#pragma once

// Laboratory parameters -> dimensionless model (C, C_spon, d_res, eta), the
// spontaneous-emission bound, and decay-limited squeezing.

#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

namespace dicke {

// SI units throughout.
struct PhysicalConfig {
  double gamma = 0.0;            // excited-state decay rate (1/s)
  double delta = 0.0;            // detuning (1/s)
  double wavelength = 0.0;       // m
  double area = 0.0;             // beam cross-section (m^2)
  double length = 0.0;           // medium length (m)
  double density = 0.0;          // atoms per m^3
  int atom_count = 0;            // N_a
  double chi_sq_integral = 0.0;  // integral of |chi(t)|^2 dt over the pulse (1/s)
  double photon_number = 0.0;    // N_ph
};

struct DerivedStrengths {
  double c = 0.0;
  double c_spon = 0.0;
  double d_res = 0.0;
  double eta = 0.0;
  double c_bound = 0.0;
};

struct OpticalDepths {
  double d_res = 0.0;
  double eta = 0.0;
  double c_bound = 0.0;
};

struct OptimalStrength {
  double c_opt = 0.0;   // sqrt(d_res / (2 N_a))
  double xi_min = 0.0;  // 2 sqrt(e) / sqrt(d_res)
  double c_numeric = 0.0;
  double xi_numeric = 0.0;
};

// With N_a = n_a A L the pulse-integral definition of C gives
// C_spon^2 = (16 pi^2 / 3) C^2 N_a / d_res exactly.
inline constexpr double kSponIdentityConstant = 16.0 * std::numbers::pi * std::numbers::pi / 3.0;
inline constexpr double kOptimumRelTolerance = 1e-6;

// Required fields positive (chi_sq_integral, N_ph may be 0); ConfigError names
// the offending field.
void validate(const PhysicalConfig& config);
// Advisory checks: detuning, Fresnel number, N_a vs n_a A L, eta, C bound,
// agreement of the two expressions for C.
std::vector<std::string> advisory_warnings(const PhysicalConfig& config);

// Exactly the keys gamma, delta, wavelength, area, length, density, N_a,
// chi_sq_integral, N_ph; unknown or missing keys are ConfigErrors.
PhysicalConfig config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const PhysicalConfig& config);
nlohmann::json to_json(const DerivedStrengths& strengths);

// C_spon = sqrt(gamma * chi_sq_integral / delta^2).
double c_spon(const PhysicalConfig& config);
// C = [3/(16 pi^2) (lambda^2/A) C_spon^2]^{1/2}.
double measurement_strength(const PhysicalConfig& config);
// C = (gamma/delta)(d_res/N_a) sqrt(N_ph) = sqrt(eta) sqrt(d_res/N_a).
double photon_number_strength(const PhysicalConfig& config);
// d_res = n_a lambda^2 L, eta = (d_res/N_a)(gamma/delta)^2 N_ph, C_bound = sqrt(d_res/N_a).
OpticalDepths optical_depths(const PhysicalConfig& config);
DerivedStrengths derived_strengths(const PhysicalConfig& config);
// C_spon^2 / (C^2 N_a / d_res); equals kSponIdentityConstant when N_a = n_a A L.
double spon_identity_ratio(const PhysicalConfig& config);

// phi = 2 p^2 Omega / (hbar Delta c eps0 A) <S_z>, with the dipole constants
// passed as p^2/(hbar eps0) and Omega/c = 2 pi / lambda.
double faraday_angle_prefactor(const PhysicalConfig& config, double dipole_sq_over_hbar_eps0);
double faraday_angle(const PhysicalConfig& config, double dipole_sq_over_hbar_eps0, double mean_sz);
// n_a L Omega p^2 / (hbar Delta eps0 c): the factor in phi_hat = (.) S_z / S.
double rotation_operator_prefactor(const PhysicalConfig& config, double dipole_sq_over_hbar_eps0);

// Null-measurement squeezing with spontaneous decay of the mean spin:
// xi = sqrt(2S) dS_z / (S exp(-C^2 N_a/d_res)) with dS_z = 1/(sqrt(2) C), the
// standard deviation of the exp(-C^2 M^2) reweighting. Valid for C >> 1/sqrt(S).
double squeezing_with_decay(double c, int atom_count, double d_res);
bool decay_formula_in_regime(double c, int atom_count);

// Closed forms, cross-checked by golden-section minimisation of
// squeezing_with_decay on (0, 10 C_opt]; ConsistencyError beyond 1e-6 relative.
OptimalStrength optimal_strength(int atom_count, double d_res);

// C ~ 1/sqrt(1 - mu); +infinity for mu = 1.
double inefficiency_optimum(int atom_count, double efficiency);

}  // namespace dicke
