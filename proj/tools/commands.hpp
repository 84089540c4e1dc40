#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace cli {

/// Files written by a command and whether every numerical stage converged.
struct CommandResult {
  std::vector<std::filesystem::path> artifacts;
  bool converged = true;
  std::string note;
};

const std::vector<std::string>& command_names();

/// Throws ConfigError for an unknown command.
CommandResult run_command(const RunConfig& cfg);

}  // namespace cli
