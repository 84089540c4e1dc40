#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace channel {

/// Runs fn(0..count-1) on up to `workers` threads (0 = hardware concurrency).
/// Each index writes its own slot, so results do not depend on scheduling.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

/// Interval [lo, hi] swept by one band function. clipped marks bands that
/// leave the trusted window somewhere, in which case hi is the ceiling.
struct BandInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool clipped = false;
};

/// Spectrum of one fiber: `below(theta)` gives all eigenvalues <= ceiling,
/// `lowest(theta, k)` the lowest k. Both ascending.
struct FiberSpectrum {
  std::function<std::vector<double>(double)> below;
  std::function<std::vector<double>(double, int)> lowest;
};

struct SamplerOptions {
  int theta_count = 33;  ///< odd, >= 9; grid -1/2 + i / (count - 1)
  double ceiling = 0.0;
  bool refine = true;
  double refine_tolerance = 1e-8;
  int workers = 0;
};

struct SampledBands {
  std::vector<double> theta_grid;
  std::vector<std::vector<double>> energies;  ///< per grid point, eigenvalues <= ceiling
  std::vector<BandInterval> intervals;        ///< per band index j
  int refined_extrema = 0;
};

/// theta grid, band intervals and golden-section refinement of interior
/// grid extrema. The point +1/2 is copied from -1/2.
SampledBands sample_bands(const FiberSpectrum& spectrum, const SamplerOptions& options);

std::vector<double> theta_grid(int theta_count);

}  // namespace channel
