#include "channel/fiber.hpp"

#include <cmath>
#include <complex>
#include <iomanip>

#include "channel/errors.hpp"

namespace channel {

FiberMatrix::FiberMatrix(double theta, const FiberTruncation& trunc) : theta_(theta), trunc_(trunc) {
  if (trunc.n_modes < 1 || trunc.m_cutoff < 0) throw ConfigError("fiber truncation needs N >= 1 and M >= 0");
  const int dim = trunc.n_modes * (2 * trunc.m_cutoff + 1);
  entries_ = Eigen::MatrixXcd::Zero(dim, dim);
}

double FiberMatrix::hermiticity_defect() const { return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff(); }

void FiberMatrix::write_csv(std::ostream& out) const { write_matrix_csv(out, entries_); }

FiberMatrix assemble_fiber(const ChannelParams& params, const ProjectedPotential& proj, double theta,
                           const FiberTruncation& trunc) {
  if (!std::isfinite(theta) || std::abs(theta + trunc.m_center) > 0.5 + 1e-12) {
    throw ConfigError("theta + m_center must lie in [-1/2, 1/2]");
  }
  const int nn = trunc.n_modes;
  const int mm = trunc.m_cutoff;
  if (proj.nmax() < nn - 1) throw ConfigError("projection nmax is below the Hermite truncation");
  if (proj.mfourier() < 2 * mm) throw ConfigError("projection Fourier cutoff is below 2M");
  if (std::abs(proj.alpha() - params.alpha) > 1e-12 * params.alpha) {
    throw ConfigError("projection was built for a different alpha");
  }
  FiberMatrix mat(theta, trunc);
  auto& a = mat.entries();
  const double b = params.B;
  const double alpha = params.alpha;
  const int m_lo = trunc.m_center - mm;
  const int m_hi = trunc.m_center + mm;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double p = m + theta;
    for (int n = 0; n < nn; ++n) {
      const int r = mat.row(n, m);
      a(r, r) = alpha * (2 * n + 1) + p * p + proj.coeff(n, n, 0).real();
      if (n + 1 < nn && b != 0.0) {
        a(r, mat.row(n + 1, m)) = b * std::sqrt(2.0 * (n + 1) / alpha) * p;
      }
      for (int m2 = m; m2 <= m_hi; ++m2) {
        for (int n2 = (m2 == m ? n + 1 : 0); n2 < nn; ++n2) {
          a(r, mat.row(n2, m2)) += proj.coeff(n, n2, m - m2);
        }
      }
    }
  }
  // Mirror the upper triangle so the matrix is Hermitian exactly.
  const int dim = mat.dimension();
  for (int i = 0; i < dim; ++i) {
    a(i, i) = a(i, i).real();
    for (int j = i + 1; j < dim; ++j) a(j, i) = std::conj(a(i, j));
  }
  return mat;
}

FiberMatrix assemble_fiber(const ChannelParams& params, const ProjectedPotential& proj, double theta, int n_modes,
                           int m_cutoff) {
  return assemble_fiber(params, proj, theta, FiberTruncation{n_modes, m_cutoff, 0});
}

std::vector<double> eigenvalues_fiber(const FiberMatrix& mat, int count) {
  return hermitian_eigenvalues(mat.entries(), count);
}

std::vector<double> eigenvalues_fiber_below(const FiberMatrix& mat, double ceiling) {
  return hermitian_eigenvalues_below(mat.entries(), ceiling);
}

Eigensystem eigensystem_fiber(const FiberMatrix& mat, int count) {
  return hermitian_eigensystem(mat.entries(), count);
}

double unperturbed_level(const ChannelParams& params, int n, double p) {
  return params.alpha * (2 * n + 1) + params.beta * p * p;
}

ResolventBound complex_theta_resolvent_bound(const ChannelParams& params, double theta2, int n_range, int m_range) {
  if (!(theta2 > 0.0)) throw ConfigError("theta2 must be positive");
  ResolventBound out;
  out.bound = 1.0 / (params.beta * params.beta * theta2 * theta2);
  for (int n = 0; n <= n_range; ++n) {
    for (int m = -m_range; m <= m_range; ++m) {
      const std::complex<double> z(m + 0.5, theta2);
      const std::complex<double> e = params.alpha * (2 * n + 1) + params.beta * z * z;
      out.sup_value = std::max(out.sup_value, 1.0 / std::norm(e + 1.0));
    }
  }
  out.pass = out.sup_value <= out.bound;
  return out;
}

}  // namespace channel
