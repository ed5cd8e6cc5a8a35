#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "json.hpp"
#include "mixlab/core/error.hpp"

namespace mixlab::report {

inline constexpr const char* kModule = "cli_reporting";

#ifdef MIXLAB_VERSION
inline constexpr const char* kVersion = MIXLAB_VERSION;
#else
inline constexpr const char* kVersion = "0.1.0";
#endif

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Round-trip formatting for tables. Non-finite values are spelled out.
inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string fmt(std::int64_t x) { return std::to_string(x); }

// Writes to a sibling temporary and renames it over the target, so readers
// never observe a partially written file.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(kModule, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(kModule, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(kModule, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(kModule, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

class CsvTable {
 public:
  // The first line names the table and its column-schema version.
  CsvTable(std::string name, int schema_version, std::vector<std::string> columns)
      : name_(std::move(name)), version_(schema_version), columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size())
      throw Error(kModule, "row width mismatch in table " + name_);
    rows_.push_back(std::move(cells));
  }

  std::size_t size() const { return rows_.size(); }

  std::string str() const {
    std::string out = "# mixlab table " + name_ + " v" + std::to_string(version_) + "\n";
    auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += '\n';
    };
    line(columns_);
    for (const auto& r : rows_) line(r);
    return out;
  }

 private:
  std::string name_;
  int version_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Collects the files of one run and produces the manifest.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) {
    atomic_write(dir_ / name, content);
    files_.push_back({{"name", name}, {"fnv1a64", hex64(fnv1a64(content))}, {"bytes", content.size()}});
  }
  void write_json(const std::string& name, const nlohmann::json& j) { write(name, j.dump(2) + "\n"); }

  // Wall-clock data and similar: written, listed, but not hashed.
  void write_volatile(const std::string& name, const std::string& content) {
    atomic_write(dir_ / name, content);
    volatile_.push_back(name);
  }

  void write_manifest(const std::string& command, const nlohmann::json& resolved_config) {
    const std::string canonical = resolved_config.dump();
    nlohmann::json m{{"artifact", "mixlab"},
                     {"artifact_version", kVersion},
                     {"command", command},
                     {"config_hash", hex64(fnv1a64(canonical))},
                     {"config", resolved_config},
                     {"files", files_},
                     {"volatile_files", volatile_}};
    atomic_write(dir_ / "manifest.json", m.dump(2) + "\n");
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& f : files_) out.push_back(f["name"].get<std::string>());
    for (const auto& v : volatile_) out.push_back(v);
    return out;
  }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  nlohmann::json files_ = nlohmann::json::array();
  std::vector<std::string> volatile_;
};

}  // namespace mixlab::report
