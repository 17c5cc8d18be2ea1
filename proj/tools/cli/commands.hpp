#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace dicke::cli {

// Each command takes its full parameter set as JSON (the same object the
// manifest records), so a manifest can be replayed through the same path.
struct RunContext {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
};

using Params = nlohmann::ordered_json;

void run_statistics(const Params& params, const RunContext& ctx);
void run_collapse(const Params& params, const RunContext& ctx);
void run_trajectory(const Params& params, const RunContext& ctx);
void run_squeeze_scan(const Params& params, const RunContext& ctx);
void run_physical(const Params& params, const RunContext& ctx);

// Dispatches on the manifest's command with its recorded parameters and seed.
void run_replay(const std::filesystem::path& manifest, std::optional<std::filesystem::path> out_dir);

}  // namespace dicke::cli
