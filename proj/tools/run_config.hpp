#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <channel/potential.hpp>

namespace cli {

inline constexpr int kManifestSchemaVersion = 1;

/// Every knob of every command with its default. Config files and --set
/// overrides may only name keys that appear here.
nlohmann::json default_config();

/// Parses "key=value"; the value is read as JSON when possible, else as a string.
std::pair<std::string, nlohmann::json> parse_assignment(const std::string& text);

/// Default config, then the file (if any), then the overrides. Unknown keys and
/// type mismatches throw ConfigError.
nlohmann::json resolve_config(const std::filesystem::path& config_file,
                              const std::vector<std::string>& overrides);

struct RunConfig {
  std::string command;
  nlohmann::json values;
  channel::PotentialSpec potential;
  std::filesystem::path out_dir;
  int workers = 0;
  bool svg = false;
  bool gen_nogo = false;

  double number(const char* key) const { return values.at(key).get<double>(); }
  int integer(const char* key) const { return values.at(key).get<int>(); }
  std::vector<double> numbers(const char* key) const { return values.at(key).get<std::vector<double>>(); }
};

}  // namespace cli
