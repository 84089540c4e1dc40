#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace channel {

/// Period of x-periodic potentials. Other periods are handled by rescaling
/// (x, y) -> lambda (x, y), (B, omega, W) -> lambda^-2 (B, omega, W).
inline constexpr double kPeriod = 6.283185307179586476925286766559;

/// Fourier series of a 2*pi-periodic function, f(x) = sum_k c_k exp(i k x).
/// Real functions require c_{-k} = conj(c_k).
using FourierCoeffs = std::map<int, std::complex<double>>;

/// Transverse profile g(y) used by separable potentials.
struct YProfile {
  enum class Kind { Constant, Gaussian, Polynomial };

  Kind kind = Kind::Constant;
  double value = 1.0;         ///< Constant: value; Gaussian: peak amplitude
  double sigma = 1.0;         ///< Gaussian: a exp(-y^2 / (2 sigma^2))
  std::vector<double> poly;   ///< Polynomial: ascending coefficients

  static YProfile constant(double value);
  static YProfile gaussian(double amplitude, double sigma);
  static YProfile polynomial(std::vector<double> coefficients);

  double operator()(double y) const;
  double derivative(double y) const;
  double second_derivative(double y) const;

  double sup_abs() const;          ///< +inf for non-constant polynomials
  double sup_abs_derivative() const;
  double sup_abs_second_derivative() const;
};

struct ZeroPotential {};

/// W(x, y) = f(x) g(y) with f given by its Fourier series.
struct XPeriodicFourier {
  FourierCoeffs coeffs;
  YProfile profile;
};

/// W(x, y) = f(x).
struct XOnly {
  FourierCoeffs coeffs;
};

/// W(x, y) = g(y).
struct YOnly {
  YProfile profile;
};

struct GaussianBump {
  double amplitude = 0.0;
  double x = 0.0;
  double y = 0.0;
  double width = 1.0;
};

/// W(x, y) = sum_i a_i exp(-((x - x_i)^2 + (y - y_i)^2) / (2 s_i^2)).
struct LocalizedBumps {
  std::vector<GaussianBump> bumps;
};

/// Values on a uniform rectangular grid, bilinearly interpolated.
/// values[iy * nx + ix] = W(x0 + ix dx, y0 + iy dy). When nx * dx equals the
/// period the grid wraps in x; otherwise W = 0 outside the covered box.
struct GridSampled {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t nx = 0;
  double y0 = 0.0;
  double dy = 1.0;
  std::size_t ny = 0;
  std::vector<double> values;
};

using PotentialKind =
    std::variant<ZeroPotential, XPeriodicFourier, XOnly, YOnly, LocalizedBumps, GridSampled>;

/// Sup-norm metadata. Every finite entry is an upper bound; unbounded
/// quantities are +inf rather than errors.
struct NormEstimates {
  double w0 = 0.0;        ///< ||W||_inf
  double w0_prime = 0.0;  ///< ||x dW/dx||_inf
  double d2x = 0.0;       ///< ||d^2 W / dx^2||_inf
  double d2y = 0.0;       ///< ||d^2 W / dy^2||_inf
  double dxdy = 0.0;      ///< ||d^2 W / dx dy||_inf
  double x2d2x = 0.0;     ///< ||x^2 d^2 W / dx^2||_inf
  bool smooth = true;     ///< false when W is not C^2 (bilinear grids)
  bool analytic = true;   ///< false when a bound came from padded grid sampling
};

struct PotentialSample {
  double value = 0.0;
  bool clipped = false;  ///< point fell outside a GridSampled box
};

/// Immutable potential descriptor. Validation and norm estimation happen at
/// construction; instances can be shared freely between threads.
class PotentialSpec {
 public:
  PotentialSpec();
  explicit PotentialSpec(PotentialKind kind);

  static PotentialSpec zero();
  /// W = amplitude * cos(x), i.e. c_{+1} = c_{-1} = amplitude / 2.
  static PotentialSpec cosine(double amplitude);
  static PotentialSpec constant(double value);

  const PotentialKind& kind() const { return kind_; }
  std::string kind_name() const;
  const NormEstimates& norms() const { return norms_; }

  bool is_zero() const;
  bool is_x_periodic() const;
  bool depends_on_x() const;

  double operator()(double x, double y) const { return sample(x, y).value; }
  PotentialSample sample(double x, double y) const;
  /// (dW/dx, dW/dy); analytic for all kinds except grids (central differences).
  std::array<double, 2> gradient(double x, double y) const;

 private:
  PotentialKind kind_;
  NormEstimates norms_;
};

/// Real part of sum_k c_k exp(i k x).
double evaluate_fourier(const FourierCoeffs& coeffs, double x);
double evaluate_fourier_derivative(const FourierCoeffs& coeffs, double x);

double evaluate_potential(const PotentialSpec& spec, double x, double y);
NormEstimates potential_norm_estimates(const PotentialSpec& spec);

}  // namespace channel
