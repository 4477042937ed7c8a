#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dlc {

inline constexpr const char* kVersion = "0.3.0";

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_bytes(const std::string& bytes);

// Existing path as given, else relative to each base in turn, else under
// $DLC_DATA_DIR. Throws InputError when nothing matches.
std::filesystem::path resolve_input(const std::string& name, const std::vector<std::filesystem::path>& bases = {});

// Output files gathered during a run and published together at the end:
// each is written to a temporary sibling and renamed into place.
class OutputSet {
 public:
  void add(const std::filesystem::path& path, std::string contents);
  void commit() const;
  const std::map<std::filesystem::path, std::string>& files() const { return files_; }

 private:
  std::map<std::filesystem::path, std::string> files_;
};

void atomic_write(const std::filesystem::path& path, const std::string& contents);

struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  nlohmann::json parameters;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  std::chrono::system_clock::time_point started = std::chrono::system_clock::now();

  void add_input(const std::filesystem::path& path);
  // Finishes the wall-clock fields at call time.
  nlohmann::json to_json() const;
};

}  // namespace dlc
