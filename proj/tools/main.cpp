// channel-spectra <command> [--config file] [--set key=value ...] [--out dir] [--workers n]
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include <channel/channel.hpp>

#include "commands.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

void write_manifest(const cli::RunConfig& cfg, const cli::CommandResult& res) {
  nlohmann::json artifacts = nlohmann::json::array();
  for (const auto& p : res.artifacts) {
    artifacts.push_back({{"path", p.filename().string()}, {"bytes", fs::file_size(p)}});
  }
  nlohmann::json resolved = cfg.values;
  resolved["gen_nogo"] = cfg.gen_nogo;
  const nlohmann::json manifest = {
      {"schema_version", cli::kManifestSchemaVersion},
      {"tool", "channel-spectra"},
      {"command", cfg.command},
      {"status", res.converged ? "ok" : "not_converged"},
      {"note", res.note},
      {"workers", cfg.workers},
      {"config", resolved},
      {"artifacts", artifacts},
  };
  std::ofstream(cfg.out_dir / "manifest.json") << std::setw(2) << manifest << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Band structure, gaps, classical drift and Mourre certificates for a magnetic channel"};
  std::string command;
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_dir = "channel-out";
  int workers = 0;
  bool gen_nogo = false;
  bool svg = false;

  std::string commands_help = "one of:";
  for (const auto& c : cli::command_names()) commands_help += " " + c;
  app.add_option("command", command, commands_help)->required();
  app.add_option("--config", config_file, "JSON configuration file");
  app.add_option("--set", overrides, "override a configuration key, key=value (repeatable)");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--workers", workers, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  app.add_flag("--gen-nogo", gen_nogo, "commutator: also run the general quadratic scan");
  app.add_flag("--svg", svg, "bands, gaps, hill: also render an SVG band diagram");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    cli::RunConfig cfg;
    cfg.command = command;
    cfg.values = cli::resolve_config(config_file, overrides);
    const fs::path base = config_file.empty() ? fs::current_path() : fs::absolute(config_file).parent_path();
    cfg.potential = channel::potential_from_json(cfg.values.at("potential"), base);
    cfg.out_dir = out_dir;
    cfg.workers = workers;
    cfg.svg = svg;
    cfg.gen_nogo = gen_nogo || cfg.values.at("gen_nogo").get<bool>();

    if (std::find(cli::command_names().begin(), cli::command_names().end(), command) == cli::command_names().end()) {
      throw channel::ConfigError("unknown command '" + command + "'");
    }
    fs::create_directories(cfg.out_dir);
    channel::set_failure_dump_directory(cfg.out_dir);

    const auto res = cli::run_command(cfg);
    write_manifest(cfg, res);
    for (const auto& p : res.artifacts) std::cout << p.string() << '\n';
    if (!res.converged) {
      std::cerr << "numerical failure: " << res.note << '\n';
      return kExitNumerical;
    }
    return 0;
  } catch (const channel::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const channel::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
