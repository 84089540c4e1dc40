#include "channel/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "channel/errors.hpp"
#include "channel/hill.hpp"
#include "channel/projection.hpp"

namespace channel {
namespace {

FiberSpectrum fiber_spectrum(const ChannelParams& params, const ProjectedPotential& proj,
                             const FiberTruncation& trunc, double ceiling) {
  FiberSpectrum s;
  s.below = [&params, &proj, trunc, ceiling](double theta) {
    return eigenvalues_fiber_below(assemble_fiber(params, proj, theta, trunc), ceiling);
  };
  s.lowest = [&params, &proj, trunc](double theta, int k) {
    return eigenvalues_fiber(assemble_fiber(params, proj, theta, trunc), k);
  };
  return s;
}

// Largest change of the eigenvalues below the ceiling when (N, M) -> (N + 8, M + 4).
double cauchy_change(const ChannelParams& params, const ProjectedPotential& proj, const FiberTruncation& base,
                     double ceiling, int workers) {
  const FiberTruncation big{base.n_modes + 8, base.m_cutoff + 4, base.m_center};
  const double probes[] = {0.0, -0.5};
  double change[2] = {0.0, 0.0};
  parallel_for(2, workers, [&](std::size_t i) {
    const auto small = eigenvalues_fiber_below(assemble_fiber(params, proj, probes[i], base), ceiling);
    if (small.empty()) return;
    const auto large = eigenvalues_fiber(assemble_fiber(params, proj, probes[i], big), static_cast<int>(small.size()));
    for (std::size_t k = 0; k < small.size(); ++k) change[i] = std::max(change[i], std::abs(small[k] - large[k]));
  });
  return std::max(change[0], change[1]);
}

}  // namespace

double BandStructure::bottom() const {
  double b = std::numeric_limits<double>::infinity();
  for (const auto& iv : intervals) b = std::min(b, iv.lo);
  return b;
}

BandStructure compute_bands(const ChannelParams& params, const PotentialSpec& spec, const BandOptions& options) {
  const double w0 = spec.norms().w0;
  BandStructure bs;
  bs.params = params;
  bs.ceiling = options.ceiling > 0.0 ? options.ceiling : 3.0 * params.alpha + w0;
  if (!std::isfinite(bs.ceiling)) {
    throw ConfigError("potential is unbounded; an explicit energy ceiling is required");
  }
  FiberTruncation trunc = options.truncation;
  const double reach = std::max(0.0, bs.ceiling + (std::isfinite(w0) ? w0 : 0.0) - params.alpha) / params.beta;
  trunc.m_cutoff = std::max(trunc.m_cutoff, static_cast<int>(std::ceil(std::sqrt(reach))) + 3);

  const auto project = [&](const FiberTruncation& t) {
    const int mf = std::max(options.mfourier, 2 * (t.m_cutoff + 4));
    auto proj = project_potential(spec, params, t.n_modes + 7, mf);
    for (const auto& w : proj.warnings()) {
      if (std::find(bs.warnings.begin(), bs.warnings.end(), w) == bs.warnings.end()) bs.warnings.push_back(w);
    }
    return proj;
  };

  ProjectedPotential proj = project(trunc);
  bs.converged = !options.auto_raise;
  if (options.auto_raise) {
    for (int attempt = 0;; ++attempt) {
      bs.cauchy_change = cauchy_change(params, proj, trunc, bs.ceiling, options.workers);
      if (bs.cauchy_change <= options.cauchy_tolerance) {
        bs.converged = true;
        break;
      }
      if (attempt == options.max_raises) break;
      trunc.n_modes += 8;
      trunc.m_cutoff += 4;
      proj = project(trunc);
    }
    if (!bs.converged) {
      std::ostringstream msg;
      msg << "truncation not converged: Cauchy change " << bs.cauchy_change << " > " << options.cauchy_tolerance
          << " at N = " << trunc.n_modes << ", M = " << trunc.m_cutoff;
      bs.warnings.push_back(msg.str());
    }
  }
  if (bs.ceiling > params.alpha * trunc.n_modes) {
    bs.warnings.push_back("energy ceiling exceeds half of the highest retained Landau level; results may be unreliable");
  }
  bs.truncation = trunc;
  bs.mfourier = proj.mfourier();

  SamplerOptions so;
  so.theta_count = options.theta_count;
  so.ceiling = bs.ceiling;
  so.refine = options.refine;
  so.refine_tolerance = options.refine_tolerance;
  so.workers = options.workers;
  auto sampled = sample_bands(fiber_spectrum(params, proj, trunc, bs.ceiling), so);
  bs.theta_grid = std::move(sampled.theta_grid);
  bs.energies = std::move(sampled.energies);
  bs.intervals = std::move(sampled.intervals);
  return bs;
}

BandStructure compute_bands(const ChannelParams& params, const PotentialSpec& spec, int theta_count, double ceiling) {
  BandOptions o;
  o.theta_count = theta_count;
  o.ceiling = ceiling;
  return compute_bands(params, spec, o);
}

GapReport detect_gaps(const std::vector<BandInterval>& intervals, double ceiling, double gap_tolerance) {
  GapReport r;
  r.ceiling = ceiling;
  r.bottom = std::numeric_limits<double>::infinity();
  std::vector<BandInterval> sorted;
  for (const auto& iv : intervals) {
    if (iv.lo <= ceiling) sorted.push_back({iv.lo, std::min(iv.hi, ceiling), iv.clipped});
  }
  if (sorted.empty()) return r;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  r.bottom = sorted.front().lo;
  double reach = sorted.front().hi;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].lo - reach > gap_tolerance) r.gaps.push_back({reach, sorted[i].lo});
    reach = std::max(reach, sorted[i].hi);
  }
  return r;
}

GapReport detect_gaps(const BandStructure& bs, double gap_tolerance) {
  return detect_gaps(bs.intervals, bs.ceiling, gap_tolerance > 0.0 ? gap_tolerance : 1e-6 * bs.params.alpha);
}

GapPersistenceResult gap_persistence_sweep(double B, const std::vector<double>& omegas, const PotentialSpec& spec,
                                           int target_gap_count, const SweepOptions& options) {
  if (!spec.is_x_periodic()) throw ConfigError("gap persistence needs an x-periodic potential");
  if (!std::isfinite(spec.norms().w0)) throw ConfigError("gap persistence needs a bounded potential");
  if (target_gap_count < 1) throw ConfigError("target gap count must be positive");
  GapPersistenceResult result;
  result.tracked_gaps = static_cast<std::size_t>(target_gap_count);
  for (double omega : omegas) {
    GapPersistenceRow row;
    row.omega = omega;
    row.params = derive_params(B, omega);
    const double ceiling = 3.0 * row.params.alpha;
    BandOptions bo;
    bo.theta_count = options.theta_count;
    bo.ceiling = ceiling;
    bo.truncation.n_modes = options.n_modes;
    bo.workers = options.workers;
    const auto bs = compute_bands(row.params, spec, bo);
    row.converged = bs.converged;
    row.full = detect_gaps(bs);
    HillOptions ho;
    ho.theta_count = options.theta_count;
    ho.workers = options.workers;
    row.h00 = h00_gaps(row.params, spec, ceiling, ho);
    const std::size_t matched = std::min(row.full.count(), row.h00.count());
    for (std::size_t g = 0; g < matched; ++g) {
      row.edge_discrepancy.push_back(std::max(std::abs(row.full.gaps[g].lo - row.h00.gaps[g].lo),
                                              std::abs(row.full.gaps[g].hi - row.h00.gaps[g].hi)));
    }
    result.tracked_gaps = std::min(result.tracked_gaps, matched);
    result.rows.push_back(std::move(row));
  }
  if (result.rows.empty() || result.tracked_gaps == 0) return result;
  result.decreasing = true;
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    if (!(result.rows[i].edge_discrepancy[0] < result.rows[i - 1].edge_discrepancy[0])) result.decreasing = false;
  }
  const auto& last = result.rows.back();
  result.final_within_fraction = last.edge_discrepancy[0] <= 0.2 * last.h00.gaps[0].width();
  return result;
}

}  // namespace channel
