#pragma once

#include <vector>

#include <Eigen/Dense>

#include "channel/bands.hpp"
#include "channel/potential.hpp"
#include "channel/projection.hpp"

namespace channel {

/// Plane-wave matrix of K(theta) = -d^2/dx^2 + V on [0, 2 pi] with f(2 pi) = exp(2 pi i theta) f(0):
/// diagonal (m + theta)^2 plus c_0, off-diagonal c_{m - m'}, m in [-M, M].
Eigen::MatrixXcd hill_matrix(const FourierCoeffs& coeffs, double theta, int M = 32);

/// Lowest `count` eigenvalues, ascending.
std::vector<double> hill_spectrum(const FourierCoeffs& coeffs, double theta, int M = 32, int count = 5);

/// Fourier coefficients of W_n(x) taken from a projection.
FourierCoeffs projected_coeffs(const ProjectedPotential& proj, int n);

struct HillOptions {
  int theta_count = 33;
  int M = 32;
  double offset = 0.0;  ///< added to every eigenvalue, e.g. alpha (2n + 1)
  bool refine = true;
  int workers = 0;
};

struct HillBand {
  int n = 0;
  std::vector<double> theta_grid;
  std::vector<std::vector<double>> energies;
  std::vector<BandInterval> intervals;
  GapReport gaps;
};

/// Bands and gaps of offset + K below ceiling. gap_tolerance <= 0 selects 1e-6.
HillBand hill_bands(const FourierCoeffs& coeffs, double ceiling, const HillOptions& options = {},
                    double gap_tolerance = 0.0);

/// Gaps of H_00 = alpha + K_0, K_0 = -d^2/dx^2 + W_0(x), below ceiling.
GapReport h00_gaps(const ChannelParams& params, const PotentialSpec& spec, double ceiling,
                   const HillOptions& options = {});

/// The full n = 0 Hill band data behind h00_gaps.
HillBand h00_bands(const ChannelParams& params, const PotentialSpec& spec, double ceiling,
                   const HillOptions& options = {});

}  // namespace channel
