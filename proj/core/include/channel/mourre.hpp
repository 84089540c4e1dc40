#pragma once

#include <optional>
#include <string>
#include <vector>

#include "channel/params.hpp"
#include "channel/potential.hpp"

namespace channel {

/// Default constant of the resolvent bounds, ||P^2 R|| <= sqrt 6.
inline const double kRelboundConstant = 2.449489742783178098197284074705891391965947480656670128432692567;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;
  double length() const { return hi - lo; }
};

/// Union over n of [(2n+1) alpha - delta, (2n+1) alpha + delta] meeting (-inf, ceiling].
/// Requires 0 < delta < alpha.
std::vector<Interval> excluded_intervals(const ChannelParams& params, double delta, double ceiling);

/// C(omega, B) = c (1 + alpha^2) / omega^2.
double mourre_constant(const ChannelParams& params, double c = kRelboundConstant);

/// Right side of condition (I): delta / (2 (delta / alpha + beta C) (1 + E / eps)).
double condition_one_threshold(const ChannelParams& params, double E, double delta, double eps,
                               double c = kRelboundConstant);

/// Left side of condition (II): W0' + B alpha^-2 sqrt(c C) W0 (E + W0).
double condition_two_lhs(const ChannelParams& params, double w0, double w0_prime, double E,
                         double c = kRelboundConstant);

struct MourreReport {
  ChannelParams params;
  double E = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  double c = kRelboundConstant;
  double C = 0.0;
  double w0 = 0.0;
  double w0_prime = 0.0;
  std::vector<Interval> excluded;  ///< I(alpha, delta + eps) up to E
  bool intervals_disjoint = true;
  double condition_one_threshold = 0.0;
  bool condition_one = false;
  double condition_two_lhs = 0.0;
  double condition_two_rhs = 0.0;
  bool condition_two = false;
  bool w0_below_alpha = false;
  bool energy_outside_excluded = false;
  double spectrum_lower_bound = 0.0;  ///< alpha - W0
  std::vector<Interval> certified_set;
  bool admissible = false;
  std::vector<std::string> reasons;  ///< why the certificate fails, empty when admissible
};

MourreReport evaluate_certificate(const ChannelParams& params, const PotentialSpec& spec, double E, double delta,
                                  double eps, double c = kRelboundConstant);
/// Same with explicit norms (W0, W0').
MourreReport evaluate_certificate(const ChannelParams& params, double w0, double w0_prime, double E, double delta,
                                  double eps, double c = kRelboundConstant);

/// {lambda <= E} minus the closed intervals, starting at `lower`.
std::vector<Interval> certified_set(double lower, double E, const std::vector<Interval>& excluded);

struct ScalingRow {
  double omega = 0.0;
  ChannelParams params;
  double E = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  double condition_one_threshold = 0.0;
  double w0_prime_threshold = 0.0;  ///< delta/2 - B alpha^-2 sqrt(c C) W0 (E + W0)
  double condition_two_slack = 0.0;  ///< delta/2 - lhs of (II)
  bool energy_outside_excluded = false;
  bool admissible = false;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  bool thresholds_increasing = false;  ///< both thresholds strictly increasing along the list
  std::optional<double> first_admissible_omega;
};

/// E = E0 alpha, delta = delta0 alpha, eps = eps0 alpha for each omega.
ScalingResult scaling_sweep(double B, double E0, double delta0, double eps0, const PotentialSpec& spec,
                            const std::vector<double>& omegas, double c = kRelboundConstant, int workers = 0);

struct AppendixCheck {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double lambda_minus_floor = 0.0;  ///< omega^2 / (1 + alpha^2)
  double eigen_formula_error = 0.0;  ///< vs a direct 2x2 eigensolve of V
  bool lambda_bound_holds = false;

  double d2y = 0.0;   ///< ||d_y^2 R||
  double d2x = 0.0;   ///< ||d_x^2 R||
  double ydx = 0.0;   ///< 2 ||y d_x R||
  double y2 = 0.0;    ///< ||y^2 R||
  double dxdy = 0.0;  ///< ||d_x d_y R||
  double bound_i = 0.0;
  double bound_ii = 0.0;
  double bound_iii = 0.0;
  bool pass = false;
  std::vector<std::string> violations;
};

/// Truncated-matrix estimates of the resolvent bounds for R = (H0 + lambda)^-1,
/// sup over p = m + theta with |m| <= M and a 9-point theta grid, N Hermite modes.
AppendixCheck appendix_norm_checks(const ChannelParams& params, double lambda, int N = 40, int M = 8,
                                   double c = kRelboundConstant);

}  // namespace channel
