#include "channel/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "channel/errors.hpp"

namespace channel {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate_coeffs(const FourierCoeffs& coeffs) {
  for (const auto& [k, c] : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ConfigError("Fourier coefficients must be finite");
    }
    const auto mirror = coeffs.find(-k);
    const std::complex<double> partner = mirror == coeffs.end() ? 0.0 : mirror->second;
    if (std::abs(partner - std::conj(c)) > 1e-12 * (1.0 + std::abs(c))) {
      throw ConfigError("Fourier coefficients must satisfy c_{-k} = conj(c_k) (real potential), k = " +
                        std::to_string(k));
    }
  }
}

void validate_profile(const YProfile& p) {
  if (!std::isfinite(p.value) || !std::isfinite(p.sigma)) {
    throw ConfigError("y-profile parameters must be finite");
  }
  if (p.kind == YProfile::Kind::Gaussian && p.sigma <= 0.0) {
    throw ConfigError("Gaussian y-profile needs sigma > 0");
  }
  for (double c : p.poly) {
    if (!std::isfinite(c)) throw ConfigError("polynomial coefficients must be finite");
  }
}

bool grid_is_periodic(const GridSampled& g) {
  return std::abs(static_cast<double>(g.nx) * g.dx - kPeriod) < 1e-9 * kPeriod;
}

void validate_grid(const GridSampled& g) {
  if (g.nx < 2 || g.ny < 2) throw ConfigError("sampled potential needs at least a 2x2 grid");
  if (!(g.dx > 0.0) || !(g.dy > 0.0)) throw ConfigError("grid spacings must be positive");
  if (g.values.size() != g.nx * g.ny) {
    throw ConfigError("grid value count does not match nx * ny");
  }
  for (double v : g.values) {
    if (!std::isfinite(v)) throw ConfigError("grid values must be finite");
  }
}

double fourier_abs_sum(const FourierCoeffs& coeffs) {
  double s = 0.0;
  for (const auto& [k, c] : coeffs) s += std::abs(c);
  return s;
}

double fourier_weighted_sum(const FourierCoeffs& coeffs, int power) {
  double s = 0.0;
  for (const auto& [k, c] : coeffs) s += std::pow(std::abs(static_cast<double>(k)), power) * std::abs(c);
  return s;
}

bool fourier_depends_on_x(const FourierCoeffs& coeffs) {
  return std::any_of(coeffs.begin(), coeffs.end(),
                     [](const auto& kc) { return kc.first != 0 && std::abs(kc.second) > 0.0; });
}

// sup |f| over one period: the smaller of sum |c_k| and a padded 4096-point
// grid maximum (Lipschitz constant sum |k c_k| is exact for trigonometric sums).
std::pair<double, bool> fourier_sup(const FourierCoeffs& coeffs) {
  const double abs_sum = fourier_abs_sum(coeffs);
  constexpr int kSamples = 4096;
  const double h = kPeriod / kSamples;
  double grid_max = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    grid_max = std::max(grid_max, std::abs(evaluate_fourier(coeffs, i * h)));
  }
  const double padded = grid_max + 0.5 * h * fourier_weighted_sum(coeffs, 1);
  if (abs_sum <= padded) return {abs_sum, true};
  return {padded, false};
}

// sup_u u^2 |u^2 - 1| exp(-u^2 / 2), attained at u^2 = (5 + sqrt 17) / 2.
double bump_x2_second_derivative_constant() {
  const double t = 0.5 * (5.0 + std::sqrt(17.0));
  return (t * t - t) * std::exp(-0.5 * t);
}

double bump_value(const GaussianBump& b, double x, double y) {
  const double u = (x - b.x) / b.width;
  const double v = (y - b.y) / b.width;
  return b.amplitude * std::exp(-0.5 * (u * u + v * v));
}

NormEstimates bump_norms(const LocalizedBumps& lb) {
  NormEstimates n;
  const double k2 = bump_x2_second_derivative_constant();
  const double inv_sqrt_e = std::exp(-0.5);
  double abs_sum = 0.0;
  double lipschitz = 0.0;
  for (const auto& b : lb.bumps) {
    const double a = std::abs(b.amplitude);
    const double s = b.width;
    abs_sum += a;
    lipschitz += a / s * inv_sqrt_e;
    // |x d/dx b| <= |a| (|x_i| / s e^{-1/2} + 2/e), equality when x_i = 0.
    n.w0_prime += a * (std::abs(b.x) / s * inv_sqrt_e + 2.0 / std::exp(1.0));
    n.d2x += a / (s * s);
    n.d2y += a / (s * s);
    n.dxdy += a / (s * s) * std::exp(-1.0);
    n.x2d2x += b.x == 0.0 ? a * k2 : a * (2.0 * b.x * b.x / (s * s) + 2.0 * k2);
  }
  n.w0 = abs_sum;
  if (lb.bumps.size() > 1) {
    double xlo = kInf, xhi = -kInf, ylo = kInf, yhi = -kInf;
    for (const auto& b : lb.bumps) {
      xlo = std::min(xlo, b.x - 8.0 * b.width);
      xhi = std::max(xhi, b.x + 8.0 * b.width);
      ylo = std::min(ylo, b.y - 8.0 * b.width);
      yhi = std::max(yhi, b.y + 8.0 * b.width);
    }
    constexpr int kGrid = 400;
    const double hx = (xhi - xlo) / kGrid;
    const double hy = (yhi - ylo) / kGrid;
    double grid_max = 0.0;
    for (int i = 0; i <= kGrid; ++i) {
      for (int j = 0; j <= kGrid; ++j) {
        double w = 0.0;
        for (const auto& b : lb.bumps) w += bump_value(b, xlo + i * hx, ylo + j * hy);
        grid_max = std::max(grid_max, std::abs(w));
      }
    }
    const double padded = grid_max + 0.5 * lipschitz * std::hypot(hx, hy);
    const double tail = abs_sum * std::exp(-32.0);
    const double bound = std::max(padded, tail);
    if (bound < abs_sum) {
      n.w0 = bound;
      n.analytic = false;
    }
  }
  return n;
}

NormEstimates grid_norms(const GridSampled& g) {
  NormEstimates n;
  n.smooth = false;
  n.d2x = n.d2y = n.dxdy = n.x2d2x = kInf;
  for (double v : g.values) n.w0 = std::max(n.w0, std::abs(v));
  const bool periodic = grid_is_periodic(g);
  const std::size_t cells_x = periodic ? g.nx : g.nx - 1;
  bool varies_in_x = false;
  double w0p = 0.0;
  for (std::size_t iy = 0; iy < g.ny; ++iy) {
    for (std::size_t ix = 0; ix < cells_x; ++ix) {
      const std::size_t jx = (ix + 1) % g.nx;
      const double d = (g.values[iy * g.nx + jx] - g.values[iy * g.nx + ix]) / g.dx;
      if (d != 0.0) varies_in_x = true;
      const double xa = std::abs(g.x0 + static_cast<double>(ix) * g.dx);
      const double xb = std::abs(g.x0 + static_cast<double>(ix + 1) * g.dx);
      // dW/dx in a cell interpolates linearly in y between row differences,
      // so row maxima bound it.
      w0p = std::max(w0p, std::max(xa, xb) * std::abs(d));
    }
  }
  n.w0_prime = periodic && varies_in_x ? kInf : w0p;
  return n;
}

NormEstimates compute_norms(const PotentialKind& kind) {
  return std::visit(
      Overloaded{
          [](const ZeroPotential&) { return NormEstimates{}; },
          [](const XOnly& p) {
            NormEstimates n;
            auto [sup, analytic] = fourier_sup(p.coeffs);
            n.w0 = sup;
            n.analytic = analytic;
            const bool varies = fourier_depends_on_x(p.coeffs);
            n.w0_prime = varies ? kInf : 0.0;
            n.d2x = fourier_weighted_sum(p.coeffs, 2);
            n.x2d2x = varies ? kInf : 0.0;
            return n;
          },
          [](const XPeriodicFourier& p) {
            NormEstimates n;
            auto [fsup, analytic] = fourier_sup(p.coeffs);
            const double gsup = p.profile.sup_abs();
            const auto times = [](double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; };
            n.w0 = times(fsup, gsup);
            n.analytic = analytic;
            const bool varies = fourier_depends_on_x(p.coeffs) && gsup > 0.0;
            n.w0_prime = varies ? kInf : 0.0;
            n.d2x = times(fourier_weighted_sum(p.coeffs, 2), gsup);
            n.d2y = times(fsup, p.profile.sup_abs_second_derivative());
            n.dxdy = times(fourier_weighted_sum(p.coeffs, 1), p.profile.sup_abs_derivative());
            n.x2d2x = varies ? kInf : 0.0;
            return n;
          },
          [](const YOnly& p) {
            NormEstimates n;
            n.w0 = p.profile.sup_abs();
            n.d2y = p.profile.sup_abs_second_derivative();
            return n;
          },
          [](const LocalizedBumps& p) { return bump_norms(p); },
          [](const GridSampled& g) { return grid_norms(g); },
      },
      kind);
}

}  // namespace

YProfile YProfile::constant(double value) {
  YProfile p;
  p.kind = Kind::Constant;
  p.value = value;
  return p;
}

YProfile YProfile::gaussian(double amplitude, double sigma) {
  YProfile p;
  p.kind = Kind::Gaussian;
  p.value = amplitude;
  p.sigma = sigma;
  return p;
}

YProfile YProfile::polynomial(std::vector<double> coefficients) {
  YProfile p;
  p.kind = Kind::Polynomial;
  p.poly = std::move(coefficients);
  return p;
}

double YProfile::operator()(double y) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Gaussian:
      return value * std::exp(-0.5 * y * y / (sigma * sigma));
    case Kind::Polynomial: {
      double acc = 0.0;
      for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * y + *it;
      return acc;
    }
  }
  return 0.0;
}

double YProfile::derivative(double y) const {
  switch (kind) {
    case Kind::Constant:
      return 0.0;
    case Kind::Gaussian:
      return -y / (sigma * sigma) * (*this)(y);
    case Kind::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = poly.size(); i-- > 1;) acc = acc * y + static_cast<double>(i) * poly[i];
      return acc;
    }
  }
  return 0.0;
}

double YProfile::second_derivative(double y) const {
  switch (kind) {
    case Kind::Constant:
      return 0.0;
    case Kind::Gaussian: {
      const double s2 = sigma * sigma;
      return (y * y / (s2 * s2) - 1.0 / s2) * (*this)(y);
    }
    case Kind::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = poly.size(); i-- > 2;) {
        acc = acc * y + static_cast<double>(i * (i - 1)) * poly[i];
      }
      return acc;
    }
  }
  return 0.0;
}

namespace {
// Highest power with a nonzero coefficient, -1 for the zero polynomial.
int poly_degree(const std::vector<double>& poly) {
  for (std::size_t i = poly.size(); i-- > 0;) {
    if (poly[i] != 0.0) return static_cast<int>(i);
  }
  return -1;
}
}  // namespace

double YProfile::sup_abs() const {
  switch (kind) {
    case Kind::Constant:
      return std::abs(value);
    case Kind::Gaussian:
      return std::abs(value);
    case Kind::Polynomial: {
      const int d = poly_degree(poly);
      if (d < 0) return 0.0;
      return d == 0 ? std::abs(poly[0]) : kInf;
    }
  }
  return kInf;
}

double YProfile::sup_abs_derivative() const {
  switch (kind) {
    case Kind::Constant:
      return 0.0;
    case Kind::Gaussian:
      return std::abs(value) / sigma * std::exp(-0.5);
    case Kind::Polynomial: {
      const int d = poly_degree(poly);
      if (d <= 0) return 0.0;
      return d == 1 ? std::abs(poly[1]) : kInf;
    }
  }
  return kInf;
}

double YProfile::sup_abs_second_derivative() const {
  switch (kind) {
    case Kind::Constant:
      return 0.0;
    case Kind::Gaussian:
      return std::abs(value) / (sigma * sigma);
    case Kind::Polynomial: {
      const int d = poly_degree(poly);
      if (d <= 1) return 0.0;
      return d == 2 ? 2.0 * std::abs(poly[2]) : kInf;
    }
  }
  return kInf;
}

double evaluate_fourier(const FourierCoeffs& coeffs, double x) {
  double acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    const double phase = static_cast<double>(k) * x;
    acc += c.real() * std::cos(phase) - c.imag() * std::sin(phase);
  }
  return acc;
}

double evaluate_fourier_derivative(const FourierCoeffs& coeffs, double x) {
  double acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    const double kk = static_cast<double>(k);
    const double phase = kk * x;
    acc += -kk * (c.real() * std::sin(phase) + c.imag() * std::cos(phase));
  }
  return acc;
}

PotentialSpec::PotentialSpec() : PotentialSpec(ZeroPotential{}) {}

PotentialSpec::PotentialSpec(PotentialKind kind) : kind_(std::move(kind)) {
  std::visit(Overloaded{
                 [](const ZeroPotential&) {},
                 [](const XPeriodicFourier& p) {
                   validate_coeffs(p.coeffs);
                   validate_profile(p.profile);
                 },
                 [](const XOnly& p) { validate_coeffs(p.coeffs); },
                 [](const YOnly& p) { validate_profile(p.profile); },
                 [](const LocalizedBumps& p) {
                   for (const auto& b : p.bumps) {
                     if (!(b.width > 0.0) || !std::isfinite(b.amplitude) || !std::isfinite(b.x) ||
                         !std::isfinite(b.y) || !std::isfinite(b.width)) {
                       throw ConfigError("Gaussian bumps need finite parameters and width > 0");
                     }
                   }
                 },
                 [](const GridSampled& g) { validate_grid(g); },
             },
             kind_);
  norms_ = compute_norms(kind_);
}

PotentialSpec PotentialSpec::zero() { return PotentialSpec(ZeroPotential{}); }

PotentialSpec PotentialSpec::cosine(double amplitude) {
  return PotentialSpec(XOnly{{{-1, 0.5 * amplitude}, {1, 0.5 * amplitude}}});
}

PotentialSpec PotentialSpec::constant(double value) { return PotentialSpec(XOnly{{{0, value}}}); }

std::string PotentialSpec::kind_name() const {
  return std::visit(Overloaded{
                        [](const ZeroPotential&) { return std::string("Zero"); },
                        [](const XPeriodicFourier&) { return std::string("XPeriodicFourier"); },
                        [](const XOnly&) { return std::string("XOnly"); },
                        [](const YOnly&) { return std::string("YOnly"); },
                        [](const LocalizedBumps&) { return std::string("LocalizedBumps"); },
                        [](const GridSampled&) { return std::string("GridSampled"); },
                    },
                    kind_);
}

bool PotentialSpec::is_zero() const {
  return std::visit(
      Overloaded{
          [](const ZeroPotential&) { return true; },
          [](const XPeriodicFourier& p) { return fourier_abs_sum(p.coeffs) == 0.0 || p.profile.sup_abs() == 0.0; },
          [](const XOnly& p) { return fourier_abs_sum(p.coeffs) == 0.0; },
          [](const YOnly& p) { return p.profile.sup_abs() == 0.0; },
          [](const LocalizedBumps& p) {
            return std::all_of(p.bumps.begin(), p.bumps.end(), [](const auto& b) { return b.amplitude == 0.0; });
          },
          [](const GridSampled& g) {
            return std::all_of(g.values.begin(), g.values.end(), [](double v) { return v == 0.0; });
          },
      },
      kind_);
}

bool PotentialSpec::is_x_periodic() const {
  return std::visit(Overloaded{
                        [](const LocalizedBumps& p) { return p.bumps.empty(); },
                        [](const GridSampled& g) { return grid_is_periodic(g); },
                        [](const auto&) { return true; },
                    },
                    kind_);
}

bool PotentialSpec::depends_on_x() const {
  return std::visit(Overloaded{
                        [](const ZeroPotential&) { return false; },
                        [](const YOnly&) { return false; },
                        [](const XOnly& p) { return fourier_depends_on_x(p.coeffs); },
                        [](const XPeriodicFourier& p) { return fourier_depends_on_x(p.coeffs); },
                        [](const auto&) { return true; },
                    },
                    kind_);
}

PotentialSample PotentialSpec::sample(double x, double y) const {
  return std::visit(
      Overloaded{
          [](const ZeroPotential&) { return PotentialSample{}; },
          [&](const XOnly& p) { return PotentialSample{evaluate_fourier(p.coeffs, x), false}; },
          [&](const XPeriodicFourier& p) {
            return PotentialSample{evaluate_fourier(p.coeffs, x) * p.profile(y), false};
          },
          [&](const YOnly& p) { return PotentialSample{p.profile(y), false}; },
          [&](const LocalizedBumps& p) {
            double w = 0.0;
            for (const auto& b : p.bumps) w += bump_value(b, x, y);
            return PotentialSample{w, false};
          },
          [&](const GridSampled& g) {
            const double v = (y - g.y0) / g.dy;
            if (v < 0.0 || v > static_cast<double>(g.ny - 1)) return PotentialSample{0.0, true};
            double u = (x - g.x0) / g.dx;
            const bool periodic = grid_is_periodic(g);
            if (periodic) {
              const double n = static_cast<double>(g.nx);
              u = u - n * std::floor(u / n);
            } else if (u < 0.0 || u > static_cast<double>(g.nx - 1)) {
              return PotentialSample{0.0, true};
            }
            auto ix = static_cast<std::size_t>(std::floor(u));
            auto iy = static_cast<std::size_t>(std::floor(v));
            if (!periodic) ix = std::min(ix, g.nx - 2);
            ix = std::min(ix, g.nx - 1);
            iy = std::min(iy, g.ny - 2);
            const std::size_t jx = (ix + 1) % g.nx;
            const double tx = u - static_cast<double>(ix);
            const double ty = v - static_cast<double>(iy);
            const auto at = [&](std::size_t i, std::size_t j) { return g.values[j * g.nx + i]; };
            const double w = (1 - tx) * (1 - ty) * at(ix, iy) + tx * (1 - ty) * at(jx, iy) +
                             (1 - tx) * ty * at(ix, iy + 1) + tx * ty * at(jx, iy + 1);
            return PotentialSample{w, false};
          },
      },
      kind_);
}

std::array<double, 2> PotentialSpec::gradient(double x, double y) const {
  return std::visit(
      Overloaded{
          [](const ZeroPotential&) { return std::array<double, 2>{0.0, 0.0}; },
          [&](const XOnly& p) { return std::array<double, 2>{evaluate_fourier_derivative(p.coeffs, x), 0.0}; },
          [&](const XPeriodicFourier& p) {
            return std::array<double, 2>{evaluate_fourier_derivative(p.coeffs, x) * p.profile(y),
                                         evaluate_fourier(p.coeffs, x) * p.profile.derivative(y)};
          },
          [&](const YOnly& p) { return std::array<double, 2>{0.0, p.profile.derivative(y)}; },
          [&](const LocalizedBumps& p) {
            std::array<double, 2> g{0.0, 0.0};
            for (const auto& b : p.bumps) {
              const double w = bump_value(b, x, y);
              const double s2 = b.width * b.width;
              g[0] -= (x - b.x) / s2 * w;
              g[1] -= (y - b.y) / s2 * w;
            }
            return g;
          },
          [&](const GridSampled& g) {
            const double hx = 1e-4 * g.dx;
            const double hy = 1e-4 * g.dy;
            return std::array<double, 2>{
                (sample(x + hx, y).value - sample(x - hx, y).value) / (2 * hx),
                (sample(x, y + hy).value - sample(x, y - hy).value) / (2 * hy)};
          },
      },
      kind_);
}

double evaluate_potential(const PotentialSpec& spec, double x, double y) { return spec(x, y); }

NormEstimates potential_norm_estimates(const PotentialSpec& spec) { return spec.norms(); }

}  // namespace channel
