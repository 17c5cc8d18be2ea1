#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dicke::cli {

// Shortest round-trip decimal form, independent of the C++ locale.
std::string format_number(double value);
std::string format_number(long long value);

// Column-oriented table written either as CSV (header row, LF endings) or
// as JSON {"columns": [...], "rows": [[...], ...]}.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void add_row(std::vector<double> row);
  std::string to_csv() const;
  nlohmann::ordered_json to_json() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

// Writes to a sibling temporary file, then renames over the target.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

// Collects outputs of one command run and finally writes its manifest.
class OutputSet {
 public:
  OutputSet(std::filesystem::path dir, std::string format);

  const std::string& format() const { return format_; }
  // Name without extension; the format chooses .csv or .json.
  std::filesystem::path write_table(const std::string& stem, const Table& table);
  std::filesystem::path write_text(const std::string& name, std::string_view contents);
  std::filesystem::path write_json(const std::string& name, const nlohmann::ordered_json& doc);
  const std::vector<std::filesystem::path>& paths() const { return paths_; }

  // <command>_manifest.json with command, parameters, seed, output_paths,
  // tool_version, timestamp.
  std::filesystem::path write_manifest(const std::string& command, const nlohmann::ordered_json& parameters,
                                       std::optional<std::uint64_t> seed);

 private:
  std::filesystem::path dir_;
  std::string format_;
  std::vector<std::filesystem::path> paths_;
};

std::string utc_timestamp();

// Raised for unwritable outputs.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dicke::cli
