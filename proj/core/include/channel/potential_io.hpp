#pragma once

#include <filesystem>
#include <istream>

#include <nlohmann/json.hpp>

#include "channel/potential.hpp"

namespace channel {

// Key-value schema (JSON). Unknown keys are rejected.
//
//   {"kind": "zero"}
//   {"kind": "x_only",   "coeffs": [{"k": 1, "re": 1.0, "im": 0.0}, ...]}
//   {"kind": "x_fourier","coeffs": [...], "profile": PROFILE}
//   {"kind": "y_only",   "profile": PROFILE}
//   {"kind": "bumps",    "bumps": [{"amplitude": a, "x": x, "y": y, "width": s}, ...]}
//   {"kind": "grid",     "x0", "dx", "nx", "y0", "dy", "ny", "values": [...]}
//   {"kind": "grid",     "csv": "file.csv"}            (x, y, W) triples
//
//   PROFILE = {"type": "constant", "value": v}
//           | {"type": "gaussian", "amplitude": a, "sigma": s}
//           | {"type": "polynomial", "coefficients": [c0, c1, ...]}
//
// Shorthand: {"kind": "cosine", "amplitude": a} is W = a cos(x).
PotentialSpec potential_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json potential_to_json(const PotentialSpec& spec);

/// Reads (x, y, W) rows of a complete rectangular grid, in any order.
/// A header line is skipped when its first field is not numeric.
GridSampled parse_grid_csv(std::istream& in);
GridSampled read_grid_csv(const std::filesystem::path& path);

}  // namespace channel
