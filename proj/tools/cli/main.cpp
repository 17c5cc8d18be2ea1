// dicke: figure data, scans and trajectories for conditional spin squeezing
// by photon counting.
//
// Exit codes: 0 success, 1 usage/configuration/I-O error, 2 domain or
// conditioning error, 3 internal consistency failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dicke/errors.hpp"
#include "dicke/parallel.hpp"
#include "output.hpp"

namespace {

using dicke::cli::Params;

struct Common {
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  bool gnuplot = false;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--out", common.out, "Output directory (created if missing)");
  cmd->add_option("--seed", common.seed, "Random seed (generated and recorded when absent)");
  cmd->add_option("--format", common.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--gnuplot", common.gnuplot, "Also write a gnuplot script");
}

nlohmann::ordered_json read_json_argument(const std::string& text) {
  // Inline JSON or a path to a JSON file
  const auto first = text.find_first_not_of(" \t\n");
  try {
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
      return nlohmann::ordered_json::parse(text);
    }
    std::ifstream file(text);
    if (!file) throw dicke::ConfigError("cannot read " + text);
    return nlohmann::ordered_json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw dicke::ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  dicke::parallel::configure_from_env();

  CLI::App app{"Dicke-basis simulator of conditional spin squeezing by photon counting"};
  app.set_version_flag("--version", std::string(DICKE_VERSION));
  app.require_subcommand(1);
  Common common;

  int atoms = 0;
  double c = 0.0;
  std::optional<int> n_max;
  auto* statistics = app.add_subcommand("statistics", "Photon-number distribution after one pulse");
  statistics->add_option("--N_a,-N", atoms, "Atom count")->required()->check(CLI::PositiveNumber);
  statistics->add_option("--C,-C", c, "Measurement strength")->required()->check(CLI::NonNegativeNumber);
  statistics->add_option("--n_max", n_max, "Largest tabulated n (default ceil(C^2 S^2 + 10 C S + 20))");
  add_common(statistics, common);

  int photons = 0;
  double mu = 1.0;
  auto* collapse = app.add_subcommand("collapse", "Conditional atomic state after counting n_m photons");
  collapse->add_option("--N_a,-N", atoms, "Atom count")->required()->check(CLI::PositiveNumber);
  collapse->add_option("--C,-C", c, "Measurement strength")->required()->check(CLI::NonNegativeNumber);
  collapse->add_option("--n_m,-n", photons, "Detected photons")->required()->check(CLI::NonNegativeNumber);
  collapse->add_option("--mu", mu, "Detection efficiency")->check(CLI::Range(0.0, 1.0));
  add_common(collapse, common);

  std::string pulses = "[]";
  bool emit_dists = false;
  auto* trajectory = app.add_subcommand("trajectory", "Sequence of pulses with sampled or forced outcomes");
  trajectory->add_option("--N_a,-N", atoms, "Atom count")->required()->check(CLI::PositiveNumber);
  trajectory->add_option("--pulses", pulses, "JSON array of {C, mu, force_n}, inline or a file path");
  trajectory->add_flag("--emit-dists", emit_dists, "Write the photon distribution seen by each pulse");
  add_common(trajectory, common);

  std::optional<double> d_res;
  std::optional<double> scan_mu;
  double c_start = 0.05;
  double c_stop = 2.0;
  double c_step = 0.05;
  auto* squeeze = app.add_subcommand("squeeze-scan", "Squeezing parameter over a grid of C");
  squeeze->add_option("--N_a,-N", atoms, "Atom count")->required()->check(CLI::PositiveNumber);
  squeeze->add_option("--d_res", d_res, "Resonant optical depth (decay model)");
  squeeze->add_option("--mu", scan_mu, "Detection efficiency (efficiency model)")->check(CLI::Range(0.0, 1.0));
  squeeze->add_option("--n_m", photons, "Conditioning photon count for the efficiency model")
      ->check(CLI::NonNegativeNumber);
  squeeze->add_option("--C-start", c_start, "First grid point");
  squeeze->add_option("--C-stop", c_stop, "Last grid point");
  squeeze->add_option("--C-step", c_step, "Grid spacing");
  add_common(squeeze, common);

  std::string config_path;
  auto* physical = app.add_subcommand("physical", "Dimensionless strengths from laboratory parameters");
  physical->add_option("config", config_path, "PhysicalConfig JSON file")->required();
  add_common(physical, common);

  std::string manifest_path;
  std::optional<std::string> replay_out;
  auto* replay = app.add_subcommand("replay", "Re-run a command from its manifest");
  replay->add_option("manifest", manifest_path, "Path to <command>_manifest.json")->required();
  replay->add_option("--out", replay_out, "Output directory (default: the manifest's directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    dicke::cli::RunContext ctx{common.out, common.seed};
    auto base = [&] {
      Params p;
      p["N_a"] = atoms;
      return p;
    };
    if (*statistics) {
      Params p = base();
      p["C"] = c;
      if (n_max) p["n_max"] = *n_max;
      p["format"] = common.format;
      p["gnuplot"] = common.gnuplot;
      dicke::cli::run_statistics(p, ctx);
    } else if (*collapse) {
      Params p = base();
      p["C"] = c;
      p["n_m"] = photons;
      p["mu"] = mu;
      p["format"] = common.format;
      p["gnuplot"] = common.gnuplot;
      dicke::cli::run_collapse(p, ctx);
    } else if (*trajectory) {
      Params p = base();
      p["pulses"] = read_json_argument(pulses);
      p["emit_dists"] = emit_dists;
      p["format"] = common.format;
      dicke::cli::run_trajectory(p, ctx);
    } else if (*squeeze) {
      Params p = base();
      p["d_res"] = d_res ? Params(*d_res) : Params();
      p["mu"] = scan_mu ? Params(*scan_mu) : Params();
      p["n_m"] = photons;
      p["C_start"] = c_start;
      p["C_stop"] = c_stop;
      p["C_step"] = c_step;
      p["format"] = common.format;
      p["gnuplot"] = common.gnuplot;
      dicke::cli::run_squeeze_scan(p, ctx);
    } else if (*physical) {
      Params p;
      p["config"] = read_json_argument(config_path);
      p["format"] = common.format;
      dicke::cli::run_physical(p, ctx);
    } else if (*replay) {
      dicke::cli::run_replay(manifest_path, replay_out);
    }
  } catch (const dicke::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const dicke::cli::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const dicke::ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    // DomainError, ConditioningError, SingularStateError, ShapeError, ...
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
