#include "oracles/reference.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <boost/numeric/odeint.hpp>

namespace oracle {

double free_level(double B, double omega, int n, double p) {
  const double a2 = B * B + omega * omega;
  return std::sqrt(a2) * (2 * n + 1) + omega * omega / a2 * p * p;
}

std::vector<double> free_fiber_spectrum(double B, double omega, double theta, int nmax, int mmax) {
  std::vector<double> out;
  for (int n = 0; n <= nmax; ++n)
    for (int m = -mmax; m <= mmax; ++m) out.push_back(free_level(B, omega, n, m + theta));
  std::sort(out.begin(), out.end());
  return out;
}

double hermite_function(int n, double s) {
  const double log_c = -0.25 * std::log(std::numbers::pi) - 0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0));
  return std::exp(log_c - 0.5 * s * s) * std::hermite(static_cast<unsigned>(n), s);
}

double hermite_matrix_element(int a, int b, const std::function<double(double)>& f, double L, int panels) {
  const double h = 2.0 * L / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double s = -L + i * h;
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * hermite_function(a, s) * hermite_function(b, s) * f(s);
  }
  return sum * h / 3.0;
}

std::array<double, 4> dopri_flow(double B, double omega,
                                 const std::function<std::array<double, 2>(double, double)>& grad_w,
                                 const std::array<double, 4>& z0, double t_end, double tol) {
  using State = std::array<double, 4>;
  namespace ode = boost::numeric::odeint;
  const auto rhs = [&](const State& z, State& dz, double) {
    const double vx = 2.0 * (z[2] + z[1] * B);
    const auto g = grad_w(z[0], z[1]);
    dz[0] = vx;
    dz[1] = 2.0 * z[3];
    dz[2] = -g[0];
    dz[3] = -vx * B - 2.0 * omega * omega * z[1] - g[1];
  };
  State z = z0;
  ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(tol, tol), rhs, z, 0.0, t_end,
                          1e-4);
  return z;
}

double poisson_bracket(const PhaseFn& f, const PhaseFn& g, const std::array<double, 4>& z, double h) {
  const auto d = [&](const PhaseFn& fn, int k) {
    auto zp = z, zm = z;
    zp[k] += h;
    zm[k] -= h;
    return (fn(zp) - fn(zm)) / (2.0 * h);
  };
  double out = 0.0;
  for (int j = 0; j < 2; ++j) out += d(f, j) * d(g, j + 2) - d(f, j + 2) * d(g, j);
  return out;
}

double complex_theta_sup(double B, double omega, double theta2, int n_range, int m_range) {
  const double a2 = B * B + omega * omega;
  double best = 0.0;
  for (int n = 0; n <= n_range; ++n) {
    for (int m = -m_range; m <= m_range; ++m) {
      const std::complex<double> z(m + 0.5, theta2);
      const std::complex<double> e = std::sqrt(a2) * (2 * n + 1) + omega * omega / a2 * z * z;
      best = std::max(best, 1.0 / std::norm(e + 1.0));
    }
  }
  return best;
}

double bump_localization_grid_max(double width, double L, int points) {
  // On the line y = 0 the factor exp(-y^2 / 2 s^2) is maximal.
  double best = 0.0;
  for (int i = 0; i <= points; ++i) {
    const double x = -L + 2.0 * L * i / points;
    const double dwdx = -x / (width * width) * std::exp(-x * x / (2.0 * width * width));
    best = std::max(best, std::abs(x * dwdx));
  }
  return best;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
