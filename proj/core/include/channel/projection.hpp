#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "channel/params.hpp"
#include "channel/potential.hpp"

namespace channel {

/// Fourier coefficients c^{(n,m)}_k of the transverse projections
/// W_{n,m}(x) = integral phi_n(s) phi_m(s) W(x, s / sqrt(alpha)) ds,
/// for n, m <= nmax and |k| <= mfourier.
class ProjectedPotential {
 public:
  ProjectedPotential() = default;
  ProjectedPotential(double alpha, int nmax, int mfourier);

  double alpha() const { return alpha_; }
  int nmax() const { return nmax_; }
  int mfourier() const { return mfourier_; }

  /// Zero outside |k| <= mfourier.
  std::complex<double> coeff(int n, int m, int k) const {
    if (k < -mfourier_ || k > mfourier_) return 0.0;
    return data_[index(n, m, k)];
  }
  void set(int n, int m, int k, std::complex<double> v) { data_[index(n, m, k)] = v; }

  const std::vector<std::string>& warnings() const { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  /// Largest |c^{(n,m)}_k| over all stored entries.
  double max_abs() const;

  /// Rows n,m,k,re,im.
  void write_csv(std::ostream& out) const;

 private:
  std::size_t index(int n, int m, int k) const {
    return (static_cast<std::size_t>(n) * (nmax_ + 1) + m) * (2 * mfourier_ + 1) + (k + mfourier_);
  }

  double alpha_ = 0.0;
  int nmax_ = -1;
  int mfourier_ = 0;
  std::vector<std::complex<double>> data_;
  std::vector<std::string> warnings_;
};

struct ProjectionOptions {
  int quadrature_order = 0;    ///< 0 selects 2 nmax + 16
  bool force_sampled = false;  ///< skip separable shortcuts (used for cross-checks)
};

/// Requires an x-periodic potential (rejects bumps and non-periodic grids).
ProjectedPotential project_potential(const PotentialSpec& spec, const ChannelParams& params, int nmax,
                                     int mfourier = 16, const ProjectionOptions& options = {});

/// Transverse matrix <phi_n | g(s / sqrt(alpha)) | phi_m>, (nmax+1)^2 row-major.
std::vector<double> transverse_matrix(const YProfile& g, double alpha, int nmax, int quadrature_order = 0);

}  // namespace channel
