#include "channel/potential_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "channel/errors.hpp"

namespace channel {
namespace {

using nlohmann::json;

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

double get_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  if (!j.at(key).is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  return j.at(key).get<double>();
}

double get_number_or(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? get_number(j, key, where) : fallback;
}

std::size_t get_count(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<std::int64_t>() < 0) {
    throw ConfigError(where + ": '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(j.at(key).get<std::int64_t>());
}

FourierCoeffs coeffs_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("coeffs must be an array");
  FourierCoeffs out;
  for (const auto& entry : j) {
    require_keys(entry, {"k", "re", "im"}, "coeffs entry");
    if (!entry.contains("k") || !entry.at("k").is_number_integer()) {
      throw ConfigError("coeffs entry needs an integer 'k'");
    }
    const int k = entry.at("k").get<int>();
    if (out.count(k)) throw ConfigError("duplicate harmonic k = " + std::to_string(k));
    out[k] = {get_number_or(entry, "re", 0.0, "coeffs entry"), get_number_or(entry, "im", 0.0, "coeffs entry")};
  }
  return out;
}

json coeffs_to_json(const FourierCoeffs& c) {
  json arr = json::array();
  for (const auto& [k, v] : c) arr.push_back({{"k", k}, {"re", v.real()}, {"im", v.imag()}});
  return arr;
}

YProfile profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ConfigError("profile needs a string 'type'");
  }
  const auto type = j.at("type").get<std::string>();
  if (type == "constant") {
    require_keys(j, {"type", "value"}, "constant profile");
    return YProfile::constant(get_number_or(j, "value", 1.0, "constant profile"));
  }
  if (type == "gaussian") {
    require_keys(j, {"type", "amplitude", "sigma"}, "gaussian profile");
    return YProfile::gaussian(get_number_or(j, "amplitude", 1.0, "gaussian profile"),
                              get_number(j, "sigma", "gaussian profile"));
  }
  if (type == "polynomial") {
    require_keys(j, {"type", "coefficients"}, "polynomial profile");
    if (!j.contains("coefficients") || !j.at("coefficients").is_array()) {
      throw ConfigError("polynomial profile needs a 'coefficients' array");
    }
    std::vector<double> c;
    for (const auto& v : j.at("coefficients")) {
      if (!v.is_number()) throw ConfigError("polynomial coefficients must be numbers");
      c.push_back(v.get<double>());
    }
    return YProfile::polynomial(std::move(c));
  }
  throw ConfigError("unknown profile type '" + type + "'");
}

json profile_to_json(const YProfile& p) {
  switch (p.kind) {
    case YProfile::Kind::Constant:
      return {{"type", "constant"}, {"value", p.value}};
    case YProfile::Kind::Gaussian:
      return {{"type", "gaussian"}, {"amplitude", p.value}, {"sigma", p.sigma}};
    case YProfile::Kind::Polynomial:
      return {{"type", "polynomial"}, {"coefficients", p.poly}};
  }
  return {};
}

// Axis values of a grid read from text, with the common spacing.
struct Axis {
  double start = 0.0;
  double step = 0.0;
  std::size_t count = 0;
};

Axis make_axis(const std::set<double>& values, const char* name) {
  if (values.size() < 2) throw ConfigError(std::string("grid CSV needs at least two distinct ") + name + " values");
  std::vector<double> v(values.begin(), values.end());
  const double step = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double expected = v.front() + static_cast<double>(i) * step;
    if (std::abs(v[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw ConfigError(std::string("grid CSV ") + name + " values are not uniformly spaced");
    }
  }
  return {v.front(), step, v.size()};
}

std::size_t axis_index(const Axis& a, double value) {
  return static_cast<std::size_t>(std::llround((value - a.start) / a.step));
}

}  // namespace

PotentialSpec potential_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError("potential needs a string 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "zero") {
    require_keys(j, {"kind"}, "zero potential");
    return PotentialSpec::zero();
  }
  if (kind == "cosine") {
    require_keys(j, {"kind", "amplitude"}, "cosine potential");
    return PotentialSpec::cosine(get_number(j, "amplitude", "cosine potential"));
  }
  if (kind == "x_only") {
    require_keys(j, {"kind", "coeffs"}, "x_only potential");
    if (!j.contains("coeffs")) throw ConfigError("x_only potential needs 'coeffs'");
    return PotentialSpec(XOnly{coeffs_from_json(j.at("coeffs"))});
  }
  if (kind == "x_fourier") {
    require_keys(j, {"kind", "coeffs", "profile"}, "x_fourier potential");
    if (!j.contains("coeffs") || !j.contains("profile")) {
      throw ConfigError("x_fourier potential needs 'coeffs' and 'profile'");
    }
    return PotentialSpec(XPeriodicFourier{coeffs_from_json(j.at("coeffs")), profile_from_json(j.at("profile"))});
  }
  if (kind == "y_only") {
    require_keys(j, {"kind", "profile"}, "y_only potential");
    if (!j.contains("profile")) throw ConfigError("y_only potential needs 'profile'");
    return PotentialSpec(YOnly{profile_from_json(j.at("profile"))});
  }
  if (kind == "bumps") {
    require_keys(j, {"kind", "bumps"}, "bumps potential");
    if (!j.contains("bumps") || !j.at("bumps").is_array()) throw ConfigError("bumps potential needs a 'bumps' array");
    LocalizedBumps lb;
    for (const auto& b : j.at("bumps")) {
      require_keys(b, {"amplitude", "x", "y", "width"}, "bump");
      lb.bumps.push_back({get_number(b, "amplitude", "bump"), get_number_or(b, "x", 0.0, "bump"),
                          get_number_or(b, "y", 0.0, "bump"), get_number_or(b, "width", 1.0, "bump")});
    }
    return PotentialSpec(std::move(lb));
  }
  if (kind == "grid") {
    if (j.contains("csv")) {
      require_keys(j, {"kind", "csv"}, "grid potential");
      std::filesystem::path p = j.at("csv").get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      return PotentialSpec(read_grid_csv(p));
    }
    require_keys(j, {"kind", "x0", "dx", "nx", "y0", "dy", "ny", "values"}, "grid potential");
    GridSampled g;
    g.x0 = get_number_or(j, "x0", 0.0, "grid potential");
    g.dx = get_number(j, "dx", "grid potential");
    g.nx = get_count(j, "nx", "grid potential");
    g.y0 = get_number_or(j, "y0", 0.0, "grid potential");
    g.dy = get_number(j, "dy", "grid potential");
    g.ny = get_count(j, "ny", "grid potential");
    if (!j.contains("values") || !j.at("values").is_array()) throw ConfigError("grid potential needs 'values'");
    for (const auto& v : j.at("values")) {
      if (!v.is_number()) throw ConfigError("grid values must be numbers");
      g.values.push_back(v.get<double>());
    }
    return PotentialSpec(std::move(g));
  }
  throw ConfigError("unknown potential kind '" + kind + "'");
}

json potential_to_json(const PotentialSpec& spec) {
  return std::visit(
      [](const auto& k) -> json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ZeroPotential>) {
          return {{"kind", "zero"}};
        } else if constexpr (std::is_same_v<T, XOnly>) {
          return {{"kind", "x_only"}, {"coeffs", coeffs_to_json(k.coeffs)}};
        } else if constexpr (std::is_same_v<T, XPeriodicFourier>) {
          return {{"kind", "x_fourier"}, {"coeffs", coeffs_to_json(k.coeffs)}, {"profile", profile_to_json(k.profile)}};
        } else if constexpr (std::is_same_v<T, YOnly>) {
          return {{"kind", "y_only"}, {"profile", profile_to_json(k.profile)}};
        } else if constexpr (std::is_same_v<T, LocalizedBumps>) {
          json arr = json::array();
          for (const auto& b : k.bumps) {
            arr.push_back({{"amplitude", b.amplitude}, {"x", b.x}, {"y", b.y}, {"width", b.width}});
          }
          return {{"kind", "bumps"}, {"bumps", arr}};
        } else {
          return {{"kind", "grid"}, {"x0", k.x0}, {"dx", k.dx}, {"nx", k.nx},
                  {"y0", k.y0}, {"dy", k.dy}, {"ny", k.ny}, {"values", k.values}};
        }
      },
      spec.kind());
}

GridSampled parse_grid_csv(std::istream& in) {
  struct Row {
    double x, y, w;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    Row r{};
    if (!(ss >> r.x >> r.y >> r.w)) {
      if (rows.empty() && line_no == 1) continue;  // header
      throw ConfigError("grid CSV line " + std::to_string(line_no) + " is not an (x, y, W) triple");
    }
    rows.push_back(r);
  }
  std::set<double> xs, ys;
  for (const auto& r : rows) {
    xs.insert(r.x);
    ys.insert(r.y);
  }
  const Axis ax = make_axis(xs, "x");
  const Axis ay = make_axis(ys, "y");
  if (rows.size() != ax.count * ay.count) throw ConfigError("grid CSV does not fill a rectangular grid");
  GridSampled g;
  g.x0 = ax.start;
  g.dx = ax.step;
  g.nx = ax.count;
  g.y0 = ay.start;
  g.dy = ay.step;
  g.ny = ay.count;
  g.values.assign(g.nx * g.ny, 0.0);
  std::vector<bool> seen(g.values.size(), false);
  for (const auto& r : rows) {
    const std::size_t idx = axis_index(ay, r.y) * g.nx + axis_index(ax, r.x);
    if (seen[idx]) throw ConfigError("grid CSV repeats a grid point");
    seen[idx] = true;
    g.values[idx] = r.w;
  }
  return g;
}

GridSampled read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grid CSV " + path.string());
  return parse_grid_csv(in);
}

}  // namespace channel
