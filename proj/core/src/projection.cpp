#include "channel/projection.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "channel/errors.hpp"
#include "channel/hermite.hpp"

namespace channel {
namespace {

// Diagonal-operator matrix elements sum_i A_ni g_i A_mi with A_ni = sqrt(v_i) phi_n(s_i).
std::vector<double> weighted_gram(const HermiteBasis& basis, const std::vector<double>& g) {
  const int n1 = basis.nmax() + 1;
  const int q = basis.order();
  std::vector<double> out(static_cast<std::size_t>(n1) * n1, 0.0);
  for (int n = 0; n < n1; ++n) {
    for (int m = n; m < n1; ++m) {
      double acc = 0.0;
      for (int i = 0; i < q; ++i) acc += basis.scaled(n, i) * g[i] * basis.scaled(m, i);
      out[static_cast<std::size_t>(n) * n1 + m] = acc;
      out[static_cast<std::size_t>(m) * n1 + n] = acc;
    }
  }
  return out;
}

void check_dropped_harmonics(const FourierCoeffs& coeffs, int mfourier, ProjectedPotential& out) {
  for (const auto& [k, c] : coeffs) {
    if (std::abs(k) > mfourier && std::abs(c) > 0.0) {
      out.add_warning("harmonic k = " + std::to_string(k) + " lies beyond the Fourier cutoff " +
                      std::to_string(mfourier) + " and was dropped");
    }
  }
}

void check_aliasing(ProjectedPotential& out) {
  const double largest = out.max_abs();
  if (largest == 0.0) return;
  double edge = 0.0;
  for (int n = 0; n <= out.nmax(); ++n) {
    for (int m = 0; m <= out.nmax(); ++m) {
      edge = std::max({edge, std::abs(out.coeff(n, m, out.mfourier())), std::abs(out.coeff(n, m, -out.mfourier()))});
    }
  }
  if (edge > 1e-8 * largest) {
    std::ostringstream msg;
    msg << "aliasing: highest retained Fourier coefficient " << edge << " exceeds 1e-8 of the largest " << largest;
    out.add_warning(msg.str());
  }
}

void fill_separable(ProjectedPotential& out, const FourierCoeffs& coeffs, const std::vector<double>& gram) {
  const int n1 = out.nmax() + 1;
  for (int n = 0; n < n1; ++n) {
    for (int m = 0; m < n1; ++m) {
      const double g = gram[static_cast<std::size_t>(n) * n1 + m];
      for (int k = -out.mfourier(); k <= out.mfourier(); ++k) {
        const auto it = coeffs.find(k);
        if (it != coeffs.end()) out.set(n, m, k, it->second * g);
      }
    }
  }
}

void fill_sampled(ProjectedPotential& out, const PotentialSpec& spec, const HermiteBasis& basis) {
  const int n1 = out.nmax() + 1;
  const int q = basis.order();
  const int mf = out.mfourier();
  const int p = std::max(64, 4 * (mf + 1));
  const double inv_sqrt_alpha = 1.0 / std::sqrt(out.alpha());
  // samples[(n * n1 + m) * p + j] = W_nm(x_j), upper triangle only.
  std::vector<double> samples(static_cast<std::size_t>(n1) * n1 * p, 0.0);
  std::vector<double> g(q);
  for (int j = 0; j < p; ++j) {
    const double x = kPeriod * j / p;
    for (int i = 0; i < q; ++i) g[i] = spec(x, basis.rule().nodes[i] * inv_sqrt_alpha);
    const auto w = weighted_gram(basis, g);
    for (int n = 0; n < n1; ++n) {
      for (int m = n; m < n1; ++m) {
        samples[(static_cast<std::size_t>(n) * n1 + m) * p + j] = w[static_cast<std::size_t>(n) * n1 + m];
      }
    }
  }
  std::vector<double> cos_table(static_cast<std::size_t>(p)), sin_table(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    cos_table[j] = std::cos(kPeriod * j / p);
    sin_table[j] = std::sin(kPeriod * j / p);
  }
  for (int n = 0; n < n1; ++n) {
    for (int m = n; m < n1; ++m) {
      const double* row = &samples[(static_cast<std::size_t>(n) * n1 + m) * p];
      for (int k = 0; k <= mf; ++k) {
        double re = 0.0, im = 0.0;
        for (int j = 0; j < p; ++j) {
          const auto idx = static_cast<std::size_t>((static_cast<long>(k) * j) % p);
          re += row[j] * cos_table[idx];
          im -= row[j] * sin_table[idx];
        }
        std::complex<double> c(re / p, k == 0 ? 0.0 : im / p);
        out.set(n, m, k, c);
        out.set(m, n, k, c);
        out.set(n, m, -k, std::conj(c));
        out.set(m, n, -k, std::conj(c));
      }
    }
  }
}

}  // namespace

ProjectedPotential::ProjectedPotential(double alpha, int nmax, int mfourier)
    : alpha_(alpha),
      nmax_(nmax),
      mfourier_(mfourier),
      data_(static_cast<std::size_t>(nmax + 1) * (nmax + 1) * (2 * mfourier + 1), 0.0) {}

double ProjectedPotential::max_abs() const {
  double m = 0.0;
  for (const auto& c : data_) m = std::max(m, std::abs(c));
  return m;
}

void ProjectedPotential::write_csv(std::ostream& out) const {
  out << "n,m,k,re,im\n" << std::setprecision(17);
  for (int n = 0; n <= nmax_; ++n) {
    for (int m = 0; m <= nmax_; ++m) {
      for (int k = -mfourier_; k <= mfourier_; ++k) {
        const auto c = coeff(n, m, k);
        out << n << ',' << m << ',' << k << ',' << c.real() << ',' << c.imag() << '\n';
      }
    }
  }
}

std::vector<double> transverse_matrix(const YProfile& g, double alpha, int nmax, int quadrature_order) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  HermiteBasis basis(nmax, quadrature_order);
  std::vector<double> vals(basis.order());
  const double inv_sqrt_alpha = 1.0 / std::sqrt(alpha);
  for (int i = 0; i < basis.order(); ++i) vals[i] = g(basis.rule().nodes[i] * inv_sqrt_alpha);
  return weighted_gram(basis, vals);
}

ProjectedPotential project_potential(const PotentialSpec& spec, const ChannelParams& params, int nmax,
                                     int mfourier, const ProjectionOptions& options) {
  if (nmax < 0) throw ConfigError("projection nmax must be non-negative");
  if (mfourier < 0) throw ConfigError("Fourier cutoff must be non-negative");
  if (!spec.is_x_periodic()) {
    throw ConfigError("potential kind " + spec.kind_name() + " is not 2*pi-periodic in x; projection undefined");
  }
  ProjectedPotential out(params.alpha, nmax, mfourier);
  const auto& kind = spec.kind();
  const int q = options.quadrature_order;

  if (!options.force_sampled) {
    if (std::holds_alternative<ZeroPotential>(kind)) return out;
    if (const auto* p = std::get_if<XOnly>(&kind)) {
      for (int n = 0; n <= nmax; ++n) {
        for (int k = -mfourier; k <= mfourier; ++k) {
          const auto it = p->coeffs.find(k);
          if (it != p->coeffs.end()) out.set(n, n, k, it->second);
        }
      }
      check_dropped_harmonics(p->coeffs, mfourier, out);
      check_aliasing(out);
      return out;
    }
    if (const auto* p = std::get_if<XPeriodicFourier>(&kind)) {
      fill_separable(out, p->coeffs, transverse_matrix(p->profile, params.alpha, nmax, q));
      check_dropped_harmonics(p->coeffs, mfourier, out);
      check_aliasing(out);
      return out;
    }
    if (const auto* p = std::get_if<YOnly>(&kind)) {
      fill_separable(out, {{0, 1.0}}, transverse_matrix(p->profile, params.alpha, nmax, q));
      return out;
    }
  }
  HermiteBasis basis(nmax, q);
  fill_sampled(out, spec, basis);
  check_aliasing(out);
  return out;
}

}  // namespace channel
