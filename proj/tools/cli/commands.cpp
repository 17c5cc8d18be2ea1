#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "dicke/cat_analysis.hpp"
#include "dicke/detection.hpp"
#include "dicke/errors.hpp"
#include "dicke/peaks.hpp"
#include "dicke/physical_params.hpp"
#include "dicke/pulse_scattering.hpp"
#include "dicke/spin_basis.hpp"
#include "dicke/squeeze_scan.hpp"
#include "output.hpp"

namespace dicke::cli {

namespace {

using Json = nlohmann::ordered_json;

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(); }

const Json& field(const Params& p, const char* key) {
  if (!p.contains(key)) throw ConfigError(std::string("missing parameter '") + key + "'");
  return p.at(key);
}

double get_double(const Params& p, const char* key) {
  const auto& v = field(p, key);
  if (!v.is_number()) throw ConfigError(std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

int get_int(const Params& p, const char* key) {
  const auto& v = field(p, key);
  if (!v.is_number_integer()) throw ConfigError(std::string("parameter '") + key + "' must be an integer");
  return v.get<int>();
}

bool get_bool(const Params& p, const char* key, bool fallback) {
  if (!p.contains(key)) return fallback;
  const auto& v = p.at(key);
  if (!v.is_boolean()) throw ConfigError(std::string("parameter '") + key + "' must be true or false");
  return v.get<bool>();
}

std::string get_format(const Params& p) {
  const std::string format = p.contains("format") ? p.at("format").get<std::string>() : "csv";
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  return format;
}

int atom_count(const Params& p) {
  const int n = get_int(p, "N_a");
  if (n < 1) throw ConfigError("N_a must be >= 1");
  return n;
}

double efficiency(const Params& p, const char* key) {
  const double mu = get_double(p, key);
  if (!(mu >= 0.0 && mu <= 1.0)) throw ConfigError(std::string(key) + " must lie in [0, 1]");
  return mu;
}

std::string data_name(const OutputSet& out, const std::string& stem) {
  return stem + (out.format() == "json" ? ".json" : ".csv");
}

std::string gnuplot_script(const std::string& data, const std::string& title, const std::string& xlabel,
                           const std::string& ylabel, int ycolumns, bool logscale_y = false) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set title '" << title << "'\n"
    << "set xlabel '" << xlabel << "'\n"
    << "set ylabel '" << ylabel << "'\n";
  if (logscale_y) s << "set logscale y\n";
  s << "plot ";
  for (int c = 2; c <= ycolumns + 1; ++c) {
    s << (c > 2 ? ", " : "") << "'" << data << "' using 1:" << c << " with linespoints";
  }
  s << "\n";
  return s.str();
}

Table distribution_table(const PhotonDistribution& dist) {
  Table table({"n", "P_n"});
  for (std::size_t n = 0; n < dist.probabilities.size(); ++n) {
    table.add_row({static_cast<double>(n), dist.probabilities[n]});
  }
  return table;
}

}  // namespace

void run_statistics(const Params& params, const RunContext& ctx) {
  const int atoms = atom_count(params);
  const double c = get_double(params, "C");
  const SpinQuantum spin(atoms);
  Params resolved = params;
  if (!params.contains("n_max") || params.at("n_max").is_null()) resolved["n_max"] = default_n_max(spin, c);
  const int n_max = get_int(resolved, "n_max");
  if (n_max < 0) throw ConfigError("n_max must be >= 0");
  const bool gnuplot = get_bool(params, "gnuplot", false);

  const auto dist = photon_distribution(apply_pulse(initial_coherent_spin_state(atoms), PulseStrength(c)), n_max);
  OutputSet out(ctx.out_dir, get_format(params));
  out.write_table("statistics", distribution_table(dist));

  Json sidecar;
  sidecar["N_a"] = atoms;
  sidecar["C"] = c;
  sidecar["n_max"] = n_max;
  double total = 0.0;
  for (double p : dist.probabilities) total += p;
  sidecar["sum_P"] = total;
  sidecar["tail_mass"] = dist.tail_mass;
  auto& list = sidecar["peaks"] = Json::array();
  for (auto n : peaks::find_local_maxima(dist.probabilities)) {
    list.push_back({{"n", n},
                    {"P", dist.probabilities[n]},
                    {"halfwidth_1e", number_or_null(peaks::one_over_e_halfwidth(dist.probabilities, n))},
                    {"sigma", number_or_null(peaks::log_parabola_sigma(dist.probabilities, n))}});
  }
  out.write_json("statistics_peaks.json", sidecar);
  if (gnuplot) {
    out.write_text("statistics.gp", gnuplot_script(data_name(out, "statistics"), "photon-number distribution", "n",
                                                   "P_n", 1));
  }
  out.write_manifest("statistics", resolved, std::nullopt);
}

void run_collapse(const Params& params, const RunContext& ctx) {
  const int atoms = atom_count(params);
  const double c = get_double(params, "C");
  const int n = get_int(params, "n_m");
  const double mu = efficiency(params, "mu");
  const bool gnuplot = get_bool(params, "gnuplot", false);

  const JointState joint = apply_pulse(initial_coherent_spin_state(atoms), PulseStrength(c));
  const SpinQuantum& spin = joint.spin();
  const AtomicDensityMatrix rho = mu == 1.0 ? AtomicDensityMatrix::from_pure(collapse_perfect(joint, n))
                                            : collapse_imperfect(joint, DetectionOutcome(n, mu));
  const auto populations = rho.populations();

  OutputSet out(ctx.out_dir, get_format(params));
  Table table({"M", "P_a"});
  for (std::size_t k = 0; k < populations.size(); ++k) table.add_row({spin.m(k), populations[k]});
  out.write_table("collapse", table);

  Json summary;
  summary["N_a"] = atoms;
  summary["C"] = c;
  summary["n_m"] = n;
  summary["mu"] = mu;
  std::vector<double> rates(spin.dimension());
  for (std::size_t k = 0; k < rates.size(); ++k) rates[k] = mu * c * c * spin.m(k) * spin.m(k);
  summary["outcome_probability"] = std::exp(log_outcome_probability(joint.populations(), rates, n));
  summary["var_Sz"] = variance_sz_from_rho(rho);
  try {
    summary["xi"] = squeezing_parameter(rho);
  } catch (const SingularStateError&) {
    summary["xi"] = nullptr;
  }
  const auto arms = lattice_peaks(spin, populations);
  summary["peaks_M"] = arms;
  if (n > 0 && c > 0.0) {
    summary["xi_x"] = cat_squeezing_xi_x(atoms, c, n);
    const auto report = cat_peak_report(c, n);
    summary["cat_peak_location"] = report.m_peak;
    summary["cat_peak_width"] = report.m_width;
    summary["distinguishable"] = report.distinguishable;
    if (mu < 1.0) {
      // Coherence between the outermost lattice arms
      double arm = 0.0;
      for (double m : arms) arm = std::max(arm, std::abs(m));
      const int twice_arm = static_cast<int>(std::lround(2.0 * arm));
      try {
        summary["coherence"] = twice_arm > 0 ? Json(cat_coherence(rho, twice_arm)) : Json();
      } catch (const ShapeError&) {
        summary["coherence"] = nullptr;
      }
      summary["coherence_arm_M"] = arm;
    }
  }
  if (n == 0) {
    try {
      summary["null_width"] = null_width(spin, populations);
    } catch (const ShapeError&) {
      summary["null_width"] = nullptr;
    }
  }
  out.write_json("collapse_summary.json", summary);
  if (gnuplot) {
    out.write_text("collapse.gp", gnuplot_script(data_name(out, "collapse"), "conditional S_z distribution", "M",
                                                 "P_a(M)", 1));
  }
  out.write_manifest("collapse", params, std::nullopt);
}

namespace {

std::vector<PulseSpec> parse_pulses(const Json& spec) {
  if (!spec.is_array()) throw ConfigError("pulses must be a JSON array");
  std::vector<PulseSpec> pulses;
  for (const auto& item : spec) {
    if (!item.is_object()) throw ConfigError("each pulse must be an object {C, mu, force_n}");
    for (const auto& entry : item.items()) {
      if (entry.key() != "C" && entry.key() != "mu" && entry.key() != "force_n") {
        throw ConfigError("unknown pulse field '" + entry.key() + "'");
      }
    }
    PulseSpec pulse;
    pulse.c = get_double(item, "C");
    pulse.efficiency = item.contains("mu") ? efficiency(item, "mu") : 1.0;
    if (item.contains("force_n") && !item.at("force_n").is_null()) {
      pulse.forced_photons = get_int(item, "force_n");
      if (*pulse.forced_photons < 0) throw ConfigError("force_n must be >= 0");
    }
    pulses.push_back(pulse);
  }
  return pulses;
}

}  // namespace

void run_trajectory(const Params& params, const RunContext& ctx) {
  const int atoms = atom_count(params);
  const auto pulses = parse_pulses(field(params, "pulses"));
  const bool emit = get_bool(params, "emit_dists", false);
  const std::uint64_t seed = ctx.seed ? *ctx.seed : std::random_device{}();

  const auto result = dicke::run_trajectory(initial_coherent_spin_state(atoms), pulses, seed, emit);
  OutputSet out(ctx.out_dir, get_format(params));
  out.write_text("trajectory.jsonl", to_jsonl(result.record));
  for (std::size_t k = 0; k < result.pre_pulse_distributions.size(); ++k) {
    out.write_table("trajectory_dist_" + std::to_string(k), distribution_table(result.pre_pulse_distributions[k]));
  }
  out.write_manifest("trajectory", params, seed);
}

void run_squeeze_scan(const Params& params, const RunContext& ctx) {
  const int atoms = atom_count(params);
  const bool has_decay = params.contains("d_res") && !params.at("d_res").is_null();
  const bool has_mu = params.contains("mu") && !params.at("mu").is_null();
  if (!has_decay && !has_mu) throw ConfigError("choose d_res (decay model), mu (efficiency model) or both");
  const double d_res = has_decay ? get_double(params, "d_res") : 0.0;
  if (has_decay && !(d_res > 0.0)) throw ConfigError("d_res must be > 0");
  const double mu = has_mu ? efficiency(params, "mu") : 1.0;
  const int n = params.contains("n_m") ? get_int(params, "n_m") : 0;
  if (n < 0) throw ConfigError("n_m must be >= 0");
  const auto grid = make_grid(get_double(params, "C_start"), get_double(params, "C_stop"),
                              get_double(params, "C_step"));
  if (grid.empty() || !(grid.front() > 0.0)) throw ConfigError("C grid must be non-empty and start above 0");
  const bool gnuplot = get_bool(params, "gnuplot", false);

  std::vector<std::string> columns = {"C", "xi"};
  std::vector<std::vector<double>> extra;
  std::vector<double> xi;
  if (has_decay && !has_mu) {
    xi = scan(grid, [&](double c) { return squeezing_with_decay(c, atoms, d_res); });
    columns.push_back("xi_dicke");
    extra.push_back(scan(grid, [&](double c) { return xi_decay_dicke(atoms, c, d_res); }));
  } else if (has_mu && !has_decay) {
    xi = scan(grid, [&](double c) { return xi_efficiency(atoms, c, mu, n); });
  } else {
    xi = scan(grid, [&](double c) { return xi_combined(atoms, c, mu, d_res, n); });
    columns.push_back("xi_decay");
    columns.push_back("xi_efficiency");
    extra.push_back(scan(grid, [&](double c) { return squeezing_with_decay(c, atoms, d_res); }));
    extra.push_back(scan(grid, [&](double c) { return xi_efficiency(atoms, c, mu, n); }));
  }

  OutputSet out(ctx.out_dir, get_format(params));
  Table table(columns);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row = {grid[i], xi[i]};
    for (const auto& column : extra) row.push_back(column[i]);
    table.add_row(std::move(row));
  }
  out.write_table("squeeze_scan", table);

  const auto best = locate_minimum(grid, xi);
  Json summary;
  summary["N_a"] = atoms;
  summary["model"] = has_decay && has_mu ? "combined" : (has_decay ? "decay" : "efficiency");
  summary["argmin_C"] = best.c;
  summary["min_xi"] = best.xi;
  summary["interior_minimum"] = best.interior;
  if (has_decay) {
    const auto opt = optimal_strength(atoms, d_res);
    summary["C_opt"] = opt.c_opt;
    summary["xi_min"] = opt.xi_min;
    summary["argmin_within_one_step"] = std::abs(best.c - opt.c_opt) <= get_double(params, "C_step") * (1 + 1e-9);
    summary["min_xi_rel_error"] = std::abs(best.xi - opt.xi_min) / opt.xi_min;
  }
  if (has_mu) summary["C_estimate_inefficiency"] = number_or_null(inefficiency_optimum(atoms, mu));
  out.write_json("squeeze_scan_summary.json", summary);
  if (gnuplot) {
    out.write_text("squeeze_scan.gp", gnuplot_script(data_name(out, "squeeze_scan"), "squeezing parameter", "C",
                                                     "xi", static_cast<int>(columns.size()) - 1, true));
  }
  out.write_manifest("squeeze-scan", params, std::nullopt);
}

void run_physical(const Params& params, const RunContext& ctx) {
  const PhysicalConfig config = config_from_json(field(params, "config"));
  const auto strengths = derived_strengths(config);
  const auto warnings = advisory_warnings(config);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

  Json doc;
  doc["derived"] = to_json(strengths);
  doc["C_photon_number"] = photon_number_strength(config);
  doc["spon_identity_ratio"] = strengths.c > 0.0 ? Json(spon_identity_ratio(config)) : Json();
  doc["spon_identity_constant"] = kSponIdentityConstant;
  doc["within_bound"] = strengths.c <= strengths.c_bound;
  doc["warnings"] = warnings;
  OutputSet out(ctx.out_dir, get_format(params));
  out.write_json("physical.json", doc);
  out.write_manifest("physical", params, std::nullopt);
}

void run_replay(const std::filesystem::path& manifest_path, std::optional<std::filesystem::path> out_dir) {
  std::ifstream file(manifest_path);
  if (!file) throw ConfigError("cannot read manifest " + manifest_path.string());
  Json manifest;
  try {
    manifest = Json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  const std::string command = field(manifest, "command").get<std::string>();
  const Params& params = field(manifest, "parameters");
  RunContext ctx;
  ctx.out_dir = out_dir ? *out_dir : manifest_path.parent_path();
  if (ctx.out_dir.empty()) ctx.out_dir = ".";
  if (manifest.contains("seed")) ctx.seed = manifest.at("seed").get<std::uint64_t>();
  if (command == "statistics") return run_statistics(params, ctx);
  if (command == "collapse") return run_collapse(params, ctx);
  if (command == "trajectory") return run_trajectory(params, ctx);
  if (command == "squeeze-scan") return run_squeeze_scan(params, ctx);
  if (command == "physical") return run_physical(params, ctx);
  throw ConfigError("manifest names unknown command '" + command + "'");
}

}  // namespace dicke::cli
