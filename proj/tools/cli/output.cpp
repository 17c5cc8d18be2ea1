#include "output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <system_error>

#include <unistd.h>

namespace dicke::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string format_number(long long value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) throw std::logic_error("row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) out += (c ? "," : "") + columns_[c];
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json Table::to_json() const {
  nlohmann::ordered_json doc;
  doc["columns"] = columns_;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    auto entry = nlohmann::ordered_json::array();
    // JSON has no NaN; undefined cells become null
    for (double v : row) entry.push_back(std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json());
    rows.push_back(std::move(entry));
  }
  return doc;
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + tmp.string() + " for writing");
    file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    file.flush();
    if (!file) throw IoError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

OutputSet::OutputSet(std::filesystem::path dir, std::string format)
    : dir_(std::move(dir)), format_(std::move(format)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    throw IoError("output directory " + dir_.string() + " is not usable");
  }
}

std::filesystem::path OutputSet::write_table(const std::string& stem, const Table& table) {
  if (format_ == "json") return write_text(stem + ".json", table.to_json().dump(2) + "\n");
  return write_text(stem + ".csv", table.to_csv());
}

std::filesystem::path OutputSet::write_text(const std::string& name, std::string_view contents) {
  const auto path = dir_ / name;
  write_atomic(path, contents);
  paths_.push_back(path);
  return path;
}

std::filesystem::path OutputSet::write_json(const std::string& name, const nlohmann::ordered_json& doc) {
  return write_text(name, doc.dump(2) + "\n");
}

std::filesystem::path OutputSet::write_manifest(const std::string& command,
                                                const nlohmann::ordered_json& parameters,
                                                std::optional<std::uint64_t> seed) {
  nlohmann::ordered_json manifest;
  manifest["command"] = command;
  manifest["parameters"] = parameters;
  if (seed) manifest["seed"] = *seed;
  auto& outputs = manifest["output_paths"] = nlohmann::ordered_json::array();
  for (const auto& p : paths_) outputs.push_back(std::filesystem::absolute(p).lexically_normal().string());
  manifest["tool_version"] = DICKE_VERSION;
  manifest["timestamp"] = utc_timestamp();
  const auto path = dir_ / (command + "_manifest.json");
  write_atomic(path, manifest.dump(2) + "\n");
  return path;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

}  // namespace dicke::cli
