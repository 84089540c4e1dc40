#include "run_config.hpp"

#include <cmath>
#include <fstream>

#include <channel/errors.hpp>

namespace cli {

using nlohmann::json;

json default_config() {
  return {
      // physics
      {"B", 3.0},
      {"omega", 4.0},
      {"potential", {{"kind", "zero"}}},
      // bands, gaps, sweep-omega
      {"theta_count", 33},
      {"n_modes", 40},
      {"m_cutoff", 8},
      {"mfourier", 16},
      {"ceiling", 0.0},
      {"auto_raise", true},
      {"max_raises", 6},
      {"cauchy_tolerance", 1e-7},
      {"gap_tolerance", 0.0},
      {"omegas", {4.0, 10.0, 40.0}},
      {"target_gaps", 1},
      {"sweep_n_modes", 12},
      // hill
      {"hill_n", 0},
      {"hill_M", 32},
      // classical
      {"x0", 0.0},
      {"y0", 0.0},
      {"px0", 1.0},
      {"py0", 0.0},
      {"dt", 1e-3},
      {"tEnd", 1.0},
      // mourre
      {"E", 8.0},
      {"delta", 1.0},
      {"eps", 1.0},
      {"c", std::sqrt(6.0)},
      {"scaling_omegas", json::array()},
      {"E0", 1.6},
      {"delta0", 0.2},
      {"eps0", 0.2},
      // diagnostics
      {"lambda", 0.0},
      {"appendix_N", 40},
      {"appendix_M", 8},
      {"theta2", {1.0, 10.0, 100.0}},
      // commutator
      {"gen_nogo", false},
  };
}

std::pair<std::string, json> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw channel::ConfigError("--set expects key=value, got '" + text + "'");
  const std::string key = text.substr(0, eq);
  const std::string raw = text.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  return {key, value};
}

namespace {

bool same_kind(const json& want, const json& got) {
  if (want.is_number()) {
    if (want.is_number_integer()) return got.is_number_integer();
    return got.is_number();
  }
  return want.type() == got.type();
}

void merge(json& cfg, const std::string& key, const json& value, const std::string& origin) {
  if (!cfg.contains(key)) throw channel::ConfigError("unknown configuration key '" + key + "' (" + origin + ")");
  if (!same_kind(cfg.at(key), value)) {
    throw channel::ConfigError("configuration key '" + key + "' has the wrong type (" + origin + ")");
  }
  if (value.is_array()) {
    for (const auto& v : value) {
      if (!v.is_number()) throw channel::ConfigError("'" + key + "' must be a list of numbers");
    }
  }
  cfg[key] = value;
}

}  // namespace

json resolve_config(const std::filesystem::path& config_file, const std::vector<std::string>& overrides) {
  json cfg = default_config();
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw channel::ConfigError("cannot open config file " + config_file.string());
    const json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw channel::ConfigError("config file " + config_file.string() + " is not a JSON object");
    }
    for (const auto& [k, v] : doc.items()) merge(cfg, k, v, config_file.string());
  }
  for (const auto& o : overrides) {
    const auto [k, v] = parse_assignment(o);
    merge(cfg, k, v, "--set");
  }
  return cfg;
}

}  // namespace cli
