#include "channel/hill.hpp"

#include <cmath>

#include "channel/errors.hpp"
#include "channel/linalg.hpp"

namespace channel {

Eigen::MatrixXcd hill_matrix(const FourierCoeffs& coeffs, double theta, int M) {
  if (M < 0) throw ConfigError("Hill cutoff must be non-negative");
  if (!std::isfinite(theta) || std::abs(theta) > 0.5 + 1e-12) throw ConfigError("theta must lie in [-1/2, 1/2]");
  const int dim = 2 * M + 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  const auto c = [&](int k) -> std::complex<double> {
    const auto it = coeffs.find(k);
    return it == coeffs.end() ? 0.0 : it->second;
  };
  for (int i = 0; i < dim; ++i) {
    const double p = (i - M) + theta;
    a(i, i) = p * p + c(0).real();
    for (int j = i + 1; j < dim; ++j) {
      a(i, j) = c(i - j);
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

std::vector<double> hill_spectrum(const FourierCoeffs& coeffs, double theta, int M, int count) {
  return hermitian_eigenvalues(hill_matrix(coeffs, theta, M), count);
}

FourierCoeffs projected_coeffs(const ProjectedPotential& proj, int n) {
  if (n < 0 || n > proj.nmax()) throw ConfigError("transverse index outside the projection");
  FourierCoeffs out;
  for (int k = -proj.mfourier(); k <= proj.mfourier(); ++k) {
    const auto c = proj.coeff(n, n, k);
    if (c != 0.0) out[k] = c;
  }
  return out;
}

HillBand hill_bands(const FourierCoeffs& coeffs, double ceiling, const HillOptions& options, double gap_tolerance) {
  FiberSpectrum s;
  const double offset = options.offset;
  const int M = options.M;
  s.below = [&coeffs, offset, M, ceiling](double theta) {
    auto v = hermitian_eigenvalues_below(hill_matrix(coeffs, theta, M), ceiling - offset);
    for (auto& e : v) e += offset;
    return v;
  };
  s.lowest = [&coeffs, offset, M](double theta, int k) {
    auto v = hermitian_eigenvalues(hill_matrix(coeffs, theta, M), k);
    for (auto& e : v) e += offset;
    return v;
  };
  SamplerOptions so;
  so.theta_count = options.theta_count;
  so.ceiling = ceiling;
  so.refine = options.refine;
  so.workers = options.workers;
  auto sampled = sample_bands(s, so);
  HillBand out;
  out.theta_grid = std::move(sampled.theta_grid);
  out.energies = std::move(sampled.energies);
  out.intervals = std::move(sampled.intervals);
  out.gaps = detect_gaps(out.intervals, ceiling, gap_tolerance > 0.0 ? gap_tolerance : 1e-6);
  return out;
}

HillBand h00_bands(const ChannelParams& params, const PotentialSpec& spec, double ceiling, const HillOptions& options) {
  const int mf = std::max(64, 2 * options.M);
  const auto proj = project_potential(spec, params, 0, mf);
  HillOptions o = options;
  o.offset = params.alpha;
  auto band = hill_bands(projected_coeffs(proj, 0), ceiling, o, 1e-6 * params.alpha);
  band.n = 0;
  return band;
}

GapReport h00_gaps(const ChannelParams& params, const PotentialSpec& spec, double ceiling, const HillOptions& options) {
  return h00_bands(params, spec, ceiling, options).gaps;
}

}  // namespace channel
