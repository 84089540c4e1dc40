#pragma once

#include <string>
#include <vector>

#include "channel/band_sampler.hpp"
#include "channel/fiber.hpp"
#include "channel/params.hpp"
#include "channel/potential.hpp"

namespace channel {

struct BandOptions {
  int theta_count = 33;
  double ceiling = 0.0;              ///< <= 0 selects 3 alpha + W0
  FiberTruncation truncation{};      ///< starting truncation; M is raised to cover the ceiling
  int mfourier = 16;                 ///< raised to 2M when needed
  bool auto_raise = true;            ///< Cauchy test with (N + 8, M + 4) at theta in {0, -1/2}
  double cauchy_tolerance = 1e-7;
  int max_raises = 6;
  bool refine = true;
  double refine_tolerance = 1e-8;
  int workers = 0;
};

struct BandStructure {
  ChannelParams params;
  double ceiling = 0.0;
  FiberTruncation truncation;
  int mfourier = 0;
  bool converged = false;
  double cauchy_change = 0.0;  ///< last max eigenvalue change in the Cauchy test
  std::vector<double> theta_grid;
  std::vector<std::vector<double>> energies;
  std::vector<BandInterval> intervals;
  std::vector<std::string> warnings;

  /// inf of the computed spectral union (+inf if empty).
  double bottom() const;
};

BandStructure compute_bands(const ChannelParams& params, const PotentialSpec& spec, const BandOptions& options = {});
BandStructure compute_bands(const ChannelParams& params, const PotentialSpec& spec, int theta_count, double ceiling);

struct Gap {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct GapReport {
  std::vector<Gap> gaps;
  double bottom = 0.0;
  double ceiling = 0.0;
  std::size_t count() const { return gaps.size(); }
};

/// Open gaps of the union of band intervals strictly below the ceiling.
/// A region between the top band and the ceiling is not a gap.
GapReport detect_gaps(const std::vector<BandInterval>& intervals, double ceiling, double gap_tolerance);
/// gap_tolerance <= 0 selects 1e-6 alpha.
GapReport detect_gaps(const BandStructure& bs, double gap_tolerance = 0.0);

struct GapPersistenceRow {
  double omega = 0.0;
  ChannelParams params;
  GapReport full;
  GapReport h00;
  std::vector<double> edge_discrepancy;  ///< per gap index matched in order
  bool converged = false;
};

struct GapPersistenceResult {
  std::vector<GapPersistenceRow> rows;
  std::size_t tracked_gaps = 0;  ///< gaps present in every row, at most the target
  /// First-gap discrepancy strictly decreasing along the omega list.
  bool decreasing = false;
  /// First-gap discrepancy at the last omega <= 20% of its H_00 gap width.
  bool final_within_fraction = false;
};

struct SweepOptions {
  int theta_count = 33;
  int n_modes = 12;
  int workers = 0;
};

/// Gaps of H below 3 alpha versus gaps of H_00 = alpha + spec(K_0) for each omega.
GapPersistenceResult gap_persistence_sweep(double B, const std::vector<double>& omegas, const PotentialSpec& spec,
                                           int target_gap_count, const SweepOptions& options = {});

}  // namespace channel
