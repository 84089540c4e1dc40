#pragma once

#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "channel/linalg.hpp"
#include "channel/params.hpp"
#include "channel/projection.hpp"

namespace channel {

/// Hermite modes n = 0..n_modes-1, Fourier modes m = m_center-m_cutoff..m_center+m_cutoff.
struct FiberTruncation {
  int n_modes = 40;
  int m_cutoff = 8;
  int m_center = 0;
};

/// Truncated H(theta) in the Fourier x Hermite basis, row = (m - m_center + M) N + n.
class FiberMatrix {
 public:
  FiberMatrix(double theta, const FiberTruncation& trunc);

  double theta() const { return theta_; }
  int n_modes() const { return trunc_.n_modes; }
  int m_cutoff() const { return trunc_.m_cutoff; }
  int m_center() const { return trunc_.m_center; }
  const FiberTruncation& truncation() const { return trunc_; }
  int dimension() const { return static_cast<int>(entries_.rows()); }

  int row(int n, int m) const { return (m - trunc_.m_center + trunc_.m_cutoff) * trunc_.n_modes + n; }
  int n_of(int row) const { return row % trunc_.n_modes; }
  int m_of(int row) const { return row / trunc_.n_modes - trunc_.m_cutoff + trunc_.m_center; }

  const Eigen::MatrixXcd& entries() const { return entries_; }
  Eigen::MatrixXcd& entries() { return entries_; }

  /// max |a_ij - conj(a_ji)|.
  double hermiticity_defect() const;

  /// Rows row,col,re,im.
  void write_csv(std::ostream& out) const;

 private:
  double theta_;
  FiberTruncation trunc_;
  Eigen::MatrixXcd entries_;
};

/// Requires |theta + m_center| <= 1/2, proj.nmax() >= N-1, proj.mfourier() >= 2M
/// and proj built for params.alpha.
FiberMatrix assemble_fiber(const ChannelParams& params, const ProjectedPotential& proj, double theta,
                           const FiberTruncation& trunc);
FiberMatrix assemble_fiber(const ChannelParams& params, const ProjectedPotential& proj, double theta, int n_modes,
                           int m_cutoff);

std::vector<double> eigenvalues_fiber(const FiberMatrix& mat, int count);
std::vector<double> eigenvalues_fiber_below(const FiberMatrix& mat, double ceiling);
Eigensystem eigensystem_fiber(const FiberMatrix& mat, int count);

/// alpha (2n + 1) + beta p^2, the W = 0 band function with p = m + theta.
double unperturbed_level(const ChannelParams& params, int n, double p);

struct ResolventBound {
  double sup_value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// sup over n <= n_range, |m| <= m_range of 1 / |E_n(m + 1/2 + i theta2) + 1|^2 with
/// E_n(z) = alpha (2n + 1) + beta z^2, compared against 1 / (beta theta2)^2.
ResolventBound complex_theta_resolvent_bound(const ChannelParams& params, double theta2, int n_range = 20,
                                             int m_range = 50);

}  // namespace channel
